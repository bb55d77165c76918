//! Residue arithmetic on small moduli.

use num_integer::Integer;

/// `a mod m` in `0..m` for any signed `a`.
pub fn modulo(a: i64, m: usize) -> usize {
    a.rem_euclid(m as i64) as usize
}

/// The units `U_m` in increasing order.
pub fn units(m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|a| a.gcd(&m) == 1).collect()
}

pub fn is_unit(a: usize, m: usize) -> bool {
    (a % m).gcd(&m) == 1
}

/// Euler's totient.
pub fn euler_phi(m: usize) -> usize {
    units(m).len()
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: usize, m: usize) -> Option<usize> {
    let ext = (a as i64).extended_gcd(&(m as i64));
    (ext.gcd == 1).then(|| modulo(ext.x, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        let table = [(1, 1), (2, 1), (3, 2), (4, 2), (8, 4), (9, 6), (12, 4), (16, 8), (32, 16)];
        for (m, phi) in table {
            assert_eq!(euler_phi(m), phi, "phi({m})");
        }
    }

    #[test]
    fn inverses() {
        for m in 2..40 {
            for a in units(m) {
                let inv = inverse_mod(a, m).unwrap();
                assert_eq!(a * inv % m, 1 % m);
            }
        }
        assert_eq!(inverse_mod(2, 4), None);
        assert_eq!(inverse_mod(1, 1), Some(0));
    }

    #[test]
    fn negative_residues() {
        assert_eq!(modulo(-1, 5), 4);
        assert_eq!(modulo(-10, 5), 0);
        assert_eq!(modulo(7, 5), 2);
    }
}
