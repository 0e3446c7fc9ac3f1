//! Exact sparse linear algebra over the rationals: incremental row echelon
//! form, rank and kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

/// Sparse vector keyed by an ordered coordinate type.
pub type SparseVec<K> = BTreeMap<K, Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `v += c * w`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Rat, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let entry = v.entry(k.clone()).or_insert_with(Rat::zero);
        *entry += c * x;
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &SparseVec<K>, c: &Rat) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

struct Pivot<K> {
    vector: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Incrementally maintained echelon basis. Each stored vector has a distinct
/// leading (smallest) coordinate with coefficient one.
pub struct Echelon<K: Ord + Clone> {
    pivots: BTreeMap<K, Pivot<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// combination of previously inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>, mut combo: SparseVec<usize>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut floor: Option<K> = None;
        loop {
            let lead = match &floor {
                None => v.keys().next().cloned(),
                Some(f) => v.range(f.clone()..).map(|(k, _)| k.clone()).next(),
            };
            let Some(lead) = lead else { break };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = -v[&lead].clone();
                    axpy(&mut v, &c, &p.vector);
                    axpy(&mut combo, &c, &p.combo);
                }
                None => {
                    // keep going past a free coordinate so the residual is fully reduced
                    let next = v.range(lead.clone()..).nth(1).map(|(k, _)| k.clone());
                    match next {
                        Some(n) => floor = Some(n),
                        None => break,
                    }
                }
            }
        }
        (v, combo)
    }

    /// Inserts a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        self.insert_tracked(v).is_none()
    }

    /// Inserts a vector; when it is dependent, returns the relation among the
    /// inserted vectors (indexed by insertion order) that it witnesses.
    pub fn insert_tracked(&mut self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let index = self.inserted;
        self.inserted += 1;
        let mut combo = SparseVec::new();
        combo.insert(index, Rat::one());
        let (residual, combo) = self.reduce(v, combo);
        let Some((lead, c)) = residual.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(combo);
        };
        let inv = c.recip();
        self.pivots.insert(lead, Pivot { vector: scale(&residual, &inv), combo: scale(&combo, &inv) });
        None
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone(), SparseVec::new()).0.is_empty()
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` is in the span.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (residual, combo) = self.reduce(v.clone(), SparseVec::new());
        residual.is_empty().then(|| combo.into_iter().map(|(k, c)| (k, -c)).collect())
    }
}

pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the relations `Σ c_i images[i] = 0`, i.e. the kernel of the map
/// sending the i-th basis vector to `images[i]`.
pub fn kernel<K: Ord + Clone>(images: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::new();
    images.into_iter().filter_map(|v| e.insert_tracked(v)).collect()
}

/// Maximal linearly independent subfamily, in input order.
pub fn independent_subset<K: Ord + Clone>(vectors: Vec<SparseVec<K>>) -> Vec<SparseVec<K>> {
    let mut e = Echelon::new();
    vectors.into_iter().filter(|v| e.insert(v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, rat(c))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1), (2, 1)])];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank(Vec::<SparseVec<u32>>::new()), 0);
    }

    #[test]
    fn kernel_relations_vanish() {
        let imgs = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)]), v(&[(3, 5)])];
        let ker = kernel(imgs.clone());
        assert_eq!(ker.len(), 1);
        let mut total = SparseVec::new();
        for (i, c) in &ker[0] {
            axpy(&mut total, c, &imgs[*i]);
        }
        assert!(total.is_empty());
    }

    #[test]
    fn solve_recovers_coordinates() {
        let mut e = Echelon::new();
        e.insert(v(&[(0, 2), (1, 1)]));
        e.insert(v(&[(1, 3), (2, 1)]));
        let target = v(&[(0, 2), (1, 4), (2, 1)]);
        let coords = e.solve(&target).unwrap();
        assert_eq!(coords, BTreeMap::from([(0usize, rat(1)), (1, rat(1))]));
        assert!(e.solve(&v(&[(2, 1)])).is_none());
    }

    proptest::proptest! {
        #[test]
        fn rank_plus_nullity(rows in proptest::collection::vec(
            proptest::collection::btree_map(0u32..6, -3i64..4, 0..5), 0..8)) {
            let vecs: Vec<SparseVec<u32>> = rows
                .iter()
                .map(|r| r.iter().filter(|(_, &c)| c != 0).map(|(&k, &c)| (k, rat(c))).collect())
                .collect();
            let r = rank(vecs.clone());
            let k = kernel(vecs.clone()).len();
            proptest::prop_assert_eq!(r + k, vecs.len());
            proptest::prop_assert!(r <= 6);
        }
    }
}
