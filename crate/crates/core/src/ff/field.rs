use crate::error::{Error, Result};

/// The prime field `F_p`, elements stored canonically in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        Some(self.pow(a % self.p, self.p as u64 - 2))
    }

    /// Canonical representative of an arbitrary integer.
    pub fn reduce_i128(&self, a: i128) -> u32 {
        a.rem_euclid(self.p as i128) as u32
    }

    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::ModulusOutOfRange(1)));
        assert_eq!(
            PrimeField::new(1 << 31),
            Err(Error::ModulusOutOfRange(1 << 31))
        );
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn negative_reduction() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce_i128(-1), 6);
        assert_eq!(f.reduce_i128(-14), 0);
        assert_eq!(f.neg(0), 0);
    }

    proptest! {
        #[test]
        fn inverse_and_closure(p in prop::sample::select(vec![2u64, 3, 5, 7, 31, 65_521, 2_147_483_647]),
                               a in any::<u64>(), b in any::<u64>()) {
            let f = PrimeField::new(p).unwrap();
            let (a, b) = (f.reduce(a), f.reduce(b));
            prop_assert!(f.add(a, b) < f.p());
            prop_assert!(f.mul(a, b) < f.p());
            prop_assert_eq!(f.add(f.sub(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(f.inv(a).unwrap(), a), 1);
            } else {
                prop_assert_eq!(f.inv(a), None);
            }
        }
    }
}
