use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;

use super::LatticeError;

/// Largest `k` accepted by brute-force enumeration.
pub const BRUTE_LIMIT: u64 = 10_000;

/// Nonnegative solutions of `5q + n + c = 5k`: ways to pay out at most `k`
/// quarters' worth in quarters and nickels, `c` being the shortfall.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JackpotInstance {
    pub k: u64,
}

impl JackpotInstance {
    pub const WEIGHTS: [u64; 3] = [5, 1, 1];

    pub fn new(k: u64) -> Self {
        Self { k }
    }

    pub fn target(&self) -> u64 {
        5 * self.k
    }

    fn guard(&self) -> Result<(), LatticeError> {
        if self.k > BRUTE_LIMIT {
            return Err(LatticeError::ResourceGuard {
                k: self.k,
                limit: BRUTE_LIMIT,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Brute,
    Formula,
}

/// Coefficients `[c0, c1, c2]` of the counting polynomial `5/2 k² + 7/2 k + 1`.
pub fn jackpot_polynomial() -> [BigRational; 3] {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    [r(1, 1), r(7, 2), r(5, 2)]
}

pub fn count_jackpots(inst: JackpotInstance, mode: CountMode) -> Result<BigUint, LatticeError> {
    match mode {
        CountMode::Formula => {
            let k = BigRational::from_integer(inst.k.into());
            let [c0, c1, c2] = jackpot_polynomial();
            let value = c2 * &k * &k + c1 * &k + c0;
            debug_assert!(value.is_integer());
            Ok(value.to_integer().to_biguint().expect("count is nonnegative"))
        }
        CountMode::Brute => {
            inst.guard()?;
            let target = inst.target();
            // one task per q; each task scans every n and keeps the ones that
            // leave a nonnegative c. Integer sums are order independent.
            let total: u64 = (0..=inst.k)
                .into_par_iter()
                .map(|q| {
                    let mut count = 0u64;
                    for n in 0..=target {
                        if 5 * q + n <= target {
                            count += 1;
                        }
                    }
                    count
                })
                .sum();
            Ok(BigUint::from(total))
        }
    }
}

/// Lattice points `(q, n, c)` in lexicographic `(q, n)` order.
pub struct JackpotPoints {
    target: u64,
    q: u64,
    n: u64,
    done: bool,
}

impl Iterator for JackpotPoints {
    type Item = (u64, u64, u64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = (self.q, self.n, self.target - 5 * self.q - self.n);
        if 5 * self.q + self.n < self.target {
            self.n += 1;
        } else if 5 * (self.q + 1) <= self.target {
            self.q += 1;
            self.n = 0;
        } else {
            self.done = true;
        }
        Some(item)
    }
}

pub fn enumerate_points(inst: JackpotInstance) -> Result<JackpotPoints, LatticeError> {
    inst.guard()?;
    Ok(JackpotPoints {
        target: inst.target(),
        q: 0,
        n: 0,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn brute(k: u64) -> u64 {
        count_jackpots(JackpotInstance::new(k), CountMode::Brute)
            .unwrap()
            .to_u64()
            .unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(brute(0), 1);
        assert_eq!(brute(1), 7);
        assert_eq!(brute(2), 18);
        let f = count_jackpots(JackpotInstance::new(2), CountMode::Formula).unwrap();
        assert_eq!(f, BigUint::from(18u32));
    }

    #[test]
    fn headline_formula() {
        let f = count_jackpots(JackpotInstance::new(4000), CountMode::Formula).unwrap();
        assert_eq!(f, BigUint::from(40_014_001u64));
    }

    #[test]
    fn guard() {
        let big = JackpotInstance::new(BRUTE_LIMIT + 1);
        assert!(matches!(count_jackpots(big, CountMode::Brute), Err(LatticeError::ResourceGuard { .. })));
        assert!(enumerate_points(big).is_err());
        // formula has no guard
        assert!(count_jackpots(big, CountMode::Formula).is_ok());
    }

    #[test]
    fn stream_order() {
        let pts: Vec<_> = enumerate_points(JackpotInstance::new(1)).unwrap().collect();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], (0, 0, 5));
        assert_eq!(*pts.last().unwrap(), (1, 0, 0));
        assert_eq!(enumerate_points(JackpotInstance::new(0)).unwrap().collect::<Vec<_>>(), vec![(0, 0, 0)]);
        assert_eq!(enumerate_points(JackpotInstance::new(2)).unwrap().count(), 18);
    }
}
