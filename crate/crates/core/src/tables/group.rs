use std::collections::BTreeMap;
use std::fmt;

use crate::arith::prime_factors;

/// A finitely generated abelian group `Z^r + Z/t_1 + ... + Z/t_k` in
/// invariant-factor form: every `t_i >= 2` and `t_i | t_{i+1}`.
///
/// Construction always canonicalizes, so structural equality is group
/// isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    free_rank: u32,
    torsion: Vec<u64>,
}

impl FGAbelianGroup {
    /// Canonicalizes an arbitrary list of cyclic orders. Entries equal to 1
    /// vanish; an entry of 0 stands for a copy of `Z`.
    pub fn new(free_rank: u32, cyclic_orders: &[u64]) -> Self {
        let extra_free = cyclic_orders.iter().filter(|&&t| t == 0).count() as u32;
        // prime -> exponents of the primary components
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &t in cyclic_orders.iter().filter(|&&t| t > 1) {
            let mut rest = t;
            for p in prime_factors(t) {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                primary.entry(p).or_default().push(e);
            }
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // largest exponents go to the last invariant factors
            for (slot, e) in torsion[len - exps.len()..].iter_mut().zip(exps) {
                *slot *= p.pow(e);
            }
        }
        FGAbelianGroup {
            free_rank: free_rank + extra_free,
            torsion,
        }
    }

    pub fn trivial() -> Self {
        FGAbelianGroup::new(0, &[])
    }

    pub fn integers() -> Self {
        FGAbelianGroup::new(1, &[])
    }

    pub fn cyclic(order: u64) -> Self {
        FGAbelianGroup::new(0, &[order])
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Drops the `p`-primary torsion for every `p` in `primes`.
    pub fn localize_away(&self, primes: &[u64]) -> Self {
        let kept: Vec<u64> = self
            .torsion
            .iter()
            .map(|&t| {
                let mut t = t;
                for &p in primes {
                    while p > 1 && t % p == 0 {
                        t /= p;
                    }
                }
                t
            })
            .collect();
        FGAbelianGroup::new(self.free_rank, &kept)
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank as usize];
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}
