//! Finite abelian groups given by moduli vectors, and explicit subgroups of
//! them small enough to enumerate.

use std::collections::{BTreeSet, VecDeque};

use crate::error::CochainError;
use crate::linalg::modn;

/// Enumeration cap for explicit subgroups.
pub const ENUMERATION_CAP: u128 = 1 << 20;

/// `⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAb {
    moduli: Vec<i64>,
}

impl FinAb {
    pub fn new(moduli: Vec<i64>) -> FinAb {
        assert!(moduli.iter().all(|&d| d >= 1), "moduli must be positive");
        FinAb { moduli }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Saturates at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.moduli.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    pub fn exponent(&self) -> i64 {
        self.moduli.iter().fold(1, |a, &d| crate::linalg::lcm(a, d))
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.moduli.len()]
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.moduli).map(|(&x, &d)| modn(x, d)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).zip(&self.moduli).map(|((&x, &y), &d)| modn(x + y, d)).collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).zip(&self.moduli).map(|((&x, &y), &d)| modn(x - y, d)).collect()
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.moduli).map(|(&x, &d)| modn(modn(k, d) * x, d)).collect()
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Mixed-radix index of a reduced element (first coordinate most significant).
    pub fn encode(&self, a: &[i64]) -> u128 {
        a.iter().zip(&self.moduli).fold(0u128, |acc, (&x, &d)| acc * d as u128 + x as u128)
    }

    pub fn decode(&self, mut k: u128) -> Vec<i64> {
        let mut out = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let d = self.moduli[i] as u128;
            out[i] = (k % d) as i64;
            k /= d;
        }
        out
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<Vec<Vec<i64>>, CochainError> {
        let n = self.order();
        if n > ENUMERATION_CAP {
            return Err(CochainError::TooLarge { size: n });
        }
        Ok((0..n).map(|k| self.decode(k)).collect())
    }

    pub fn whole(&self) -> AbSubgroup {
        let gens = (0..self.rank())
            .filter(|&i| self.moduli[i] > 1)
            .map(|i| {
                let mut e = self.zero();
                e[i] = 1;
                e
            })
            .collect::<Vec<_>>();
        AbSubgroup::span(self, &gens).expect("whole group is enumerable at this scale")
    }

    pub fn zero_subgroup(&self) -> AbSubgroup {
        AbSubgroup { ambient: self.clone(), elements: [self.zero()].into_iter().collect() }
    }
}

/// An explicitly enumerated subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbSubgroup {
    ambient: FinAb,
    elements: BTreeSet<Vec<i64>>,
}

impl AbSubgroup {
    pub fn span(ambient: &FinAb, gens: &[Vec<i64>]) -> Result<AbSubgroup, CochainError> {
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| ambient.reduce(g)).filter(|g| !ambient.is_zero(g)).collect();
        let mut elements = BTreeSet::new();
        let mut queue = VecDeque::new();
        elements.insert(ambient.zero());
        queue.push_back(ambient.zero());
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = ambient.add(&x, g);
                if elements.insert(y.clone()) {
                    if elements.len() as u128 > ENUMERATION_CAP {
                        return Err(CochainError::TooLarge { size: ambient.order() });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(AbSubgroup { ambient: ambient.clone(), elements })
    }

    /// Subgroup given by a membership predicate on the whole ambient group.
    pub fn filter(ambient: &FinAb, mut pred: impl FnMut(&[i64]) -> bool) -> Result<AbSubgroup, CochainError> {
        let elements = ambient.elements()?.into_iter().filter(|x| pred(x)).collect();
        Ok(AbSubgroup { ambient: ambient.clone(), elements })
    }

    pub fn ambient(&self) -> &FinAb {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements.contains(&self.ambient.reduce(x))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.elements.iter()
    }

    pub fn is_subset_of(&self, other: &AbSubgroup) -> bool {
        self.elements.iter().all(|x| other.elements.contains(x))
    }

    pub fn intersect(&self, other: &AbSubgroup) -> AbSubgroup {
        AbSubgroup {
            ambient: self.ambient.clone(),
            elements: self.elements.intersection(&other.elements).cloned().collect(),
        }
    }

    pub fn sum(&self, other: &AbSubgroup) -> Result<AbSubgroup, CochainError> {
        let mut gens = self.generators();
        gens.extend(other.generators());
        AbSubgroup::span(&self.ambient, &gens)
    }

    /// A generating set chosen greedily: repeatedly the least element (in
    /// index order) not yet in the span.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<Vec<i64>> = [self.ambient.zero()].into_iter().collect();
        let mut sorted: Vec<&Vec<i64>> = self.elements.iter().collect();
        sorted.sort_by_key(|x| self.ambient.encode(x));
        for x in sorted {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = AbSubgroup::span(&self.ambient, &gens).expect("subset of an enumerated group").elements;
        }
        gens
    }

    /// Image under a map given on elements.
    pub fn image(&self, target: &FinAb, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<AbSubgroup, CochainError> {
        let gens: Vec<Vec<i64>> = self.generators().iter().map(|g| f(g)).collect();
        AbSubgroup::span(target, &gens)
    }

    /// Elements of `self` whose image lies in `dest`.
    pub fn preimage(&self, f: impl Fn(&[i64]) -> Vec<i64>, dest: &AbSubgroup) -> AbSubgroup {
        AbSubgroup {
            ambient: self.ambient.clone(),
            elements: self.elements.iter().filter(|x| dest.contains(&f(x))).cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_and_generators() {
        let a = FinAb::new(vec![2, 4]);
        assert_eq!(a.whole().order(), 8);
        let s = AbSubgroup::span(&a, &[vec![1, 2]]).unwrap();
        assert_eq!(s.order(), 2);
        let t = AbSubgroup::span(&a, &[vec![0, 1]]).unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(s.intersect(&t).order(), 1);
        assert_eq!(s.sum(&t).unwrap().order(), 8);
        assert_eq!(a.whole().generators().len(), 2);
        for k in 0..8 {
            assert_eq!(a.encode(&a.decode(k)), k);
        }
    }
}
