//! Strict partitions and the bipartitions labelling simple objects.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition with strictly decreasing positive parts. The empty
/// partition is allowed and has length and parity zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let strict = parts.windows(2).all(|w| w[0] > w[1]);
        if !strict || parts.last() == Some(&0) {
            return Err(Error::NotStrict(parts));
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    /// The one-box partition `(1)`.
    pub fn cell() -> Self {
        StrictPartition(vec![1])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parity of the number of parts.
    pub fn parity(&self) -> u8 {
        (self.0.len() % 2) as u8
    }

    /// All strict partitions reachable by adding one box.
    pub fn add_box(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..=self.0.len() {
            let mut parts = self.0.clone();
            if i == parts.len() {
                parts.push(1);
            } else {
                parts[i] += 1;
            }
            if let Ok(p) = StrictPartition::new(parts) {
                out.push(p);
            }
        }
        out
    }

    /// All strict partitions reachable by removing one box.
    pub fn remove_box(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            let mut parts = self.0.clone();
            parts[i] -= 1;
            if parts[i] == 0 {
                parts.pop();
            }
            if let Ok(p) = StrictPartition::new(parts) {
                out.push(p);
            }
        }
        out
    }

    /// `true` when `self` is obtained from `other` by adding one box.
    pub fn covers(&self, other: &StrictPartition) -> bool {
        self.size() == other.size() + 1 && other.add_box().contains(self)
    }

    /// Containment of shifted diagrams.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        StrictPartition::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    /// Accepts `"3,1"`, and `"-"`, `"∅"` or the empty string for ∅.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "∅" {
            return Ok(StrictPartition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        StrictPartition::new(parts)
    }
}

/// Macro-free shorthand for tests and examples: `sp(&[3, 1])`.
pub fn sp(parts: &[u32]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).expect("strict partition")
}

/// All strict partitions of `n`, in reverse lexicographic order.
pub fn enumerate_strict(n: usize) -> Vec<StrictPartition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        if rest == 0 {
            out.push(StrictPartition(cur.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All strict partitions of size at most `n`, by size then reverse lex.
pub fn strict_up_to(n: usize) -> Vec<StrictPartition> {
    (0..=n).flat_map(enumerate_strict).collect()
}

/// Dominance order on partial sums. Both sides must have the same size.
pub fn dominance_leq(lambda: &StrictPartition, nu: &StrictPartition) -> Result<bool> {
    if lambda.size() != nu.size() {
        return Err(Error::SizeMismatch { left: lambda.size(), right: nu.size() });
    }
    Ok(dominated_by(lambda.parts(), nu.parts()))
}

pub(crate) fn dominated_by(a: &[u32], b: &[u32]) -> bool {
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0u64, 0u64);
    for i in 0..n {
        sa += *a.get(i).unwrap_or(&0) as u64;
        sb += *b.get(i).unwrap_or(&0) as u64;
        if sa > sb {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleType {
    /// Endomorphisms are the scalars; `V` and `ΠV` are not isomorphic.
    M,
    /// Endomorphisms contain an odd involution; `V ≅ ΠV`.
    Q,
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimpleType::M => "M",
            SimpleType::Q => "Q",
        })
    }
}

/// A pair `(λ, μ)` of strict partitions labelling `V(λ, μ)` and `Z(λ, μ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Bipartition {
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
}

impl Bipartition {
    pub fn new(lambda: StrictPartition, mu: StrictPartition) -> Self {
        Bipartition { lambda, mu }
    }

    pub fn trivial() -> Self {
        Bipartition::default()
    }

    pub fn parity(&self) -> u8 {
        (self.lambda.parity() + self.mu.parity()) % 2
    }

    /// Koszul degree `min(|λ|, |μ|)`.
    pub fn degree(&self) -> usize {
        self.lambda.size().min(self.mu.size())
    }

    /// Block index `|λ| − |μ|`.
    pub fn block(&self) -> i64 {
        self.lambda.size() as i64 - self.mu.size() as i64
    }

    pub fn simple_type(&self) -> SimpleType {
        if self.parity() == 1 {
            SimpleType::Q
        } else {
            SimpleType::M
        }
    }

    /// Sizes `(|λ|, |μ|)`.
    pub fn sizes(&self) -> (usize, usize) {
        (self.lambda.size(), self.mu.size())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.lambda, self.mu)
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    /// `"3,1|2"`; a missing bar means `μ = ∅`.
    fn from_str(s: &str) -> Result<Self> {
        let (l, m) = s.split_once('|').unwrap_or((s, ""));
        Ok(Bipartition::new(l.parse()?, m.parse()?))
    }
}

impl TryFrom<String> for Bipartition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Bipartition> for String {
    fn from(b: Bipartition) -> String {
        b.to_string()
    }
}

pub fn bp(lambda: &[u32], mu: &[u32]) -> Bipartition {
    Bipartition::new(sp(lambda), sp(mu))
}

/// All bipartitions with `|λ| ≤ bound` and `|μ| ≤ bound`.
pub fn bipartitions_up_to(bound: usize) -> Vec<Bipartition> {
    let all = strict_up_to(bound);
    let mut out = Vec::with_capacity(all.len() * all.len());
    for l in &all {
        for m in &all {
            out.push(Bipartition::new(l.clone(), m.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_strict(0), vec![StrictPartition::empty()]);
        assert_eq!(enumerate_strict(4), vec![sp(&[4]), sp(&[3, 1])]);
        assert_eq!(enumerate_strict(6), vec![sp(&[6]), sp(&[5, 1]), sp(&[4, 2]), sp(&[3, 2, 1])]);
    }

    #[test]
    fn counts_match_generating_function() {
        // coefficients of prod_{k>=1} (1 + x^k), expanded independently
        let n = 20;
        let mut coeffs = vec![0u64; n + 1];
        coeffs[0] = 1;
        for k in 1..=n {
            for d in (k..=n).rev() {
                coeffs[d] += coeffs[d - k];
            }
        }
        assert_eq!(&coeffs[..10], &[1, 1, 1, 2, 2, 3, 4, 5, 6, 8]);
        for (d, &c) in coeffs.iter().enumerate() {
            assert_eq!(enumerate_strict(d).len() as u64, c, "size {d}");
        }
    }

    #[test]
    fn box_moves() {
        assert_eq!(sp(&[3, 1]).add_box(), vec![sp(&[4, 1]), sp(&[3, 2])]);
        assert_eq!(sp(&[3, 1]).remove_box(), vec![sp(&[2, 1]), sp(&[3])]);
        assert!(StrictPartition::empty().remove_box().is_empty());
        assert_eq!(StrictPartition::empty().add_box(), vec![sp(&[1])]);
        assert_eq!(sp(&[2, 1]).add_box(), vec![sp(&[3, 1])]);
    }

    #[test]
    fn rejects_non_strict() {
        assert!(matches!(StrictPartition::new(vec![1, 1]), Err(Error::NotStrict(_))));
        assert!(StrictPartition::new(vec![2, 0]).is_err());
        assert!("2,2".parse::<StrictPartition>().is_err());
        assert!("x".parse::<StrictPartition>().is_err());
    }

    #[test]
    fn dominance() {
        assert!(dominance_leq(&sp(&[3, 1]), &sp(&[4])).unwrap());
        assert!(!dominance_leq(&sp(&[4]), &sp(&[3, 1])).unwrap());
        assert!(matches!(dominance_leq(&sp(&[3]), &sp(&[4])), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn simple_types() {
        assert_eq!(bp(&[1], &[1]).simple_type(), SimpleType::M);
        assert_eq!(bp(&[2], &[]).simple_type(), SimpleType::Q);
        assert_eq!(bp(&[2], &[1]).simple_type(), SimpleType::M);
        assert_eq!(Bipartition::trivial().simple_type(), SimpleType::M);
    }

    #[test]
    fn bipartition_statistics() {
        let b = bp(&[2], &[1]);
        assert_eq!(b.block(), 1);
        assert_eq!(b.degree(), 1);
        assert_eq!(bp(&[], &[3, 1]).block(), -4);
        assert_eq!(Bipartition::trivial().block(), 0);
    }

    #[test]
    fn text_syntax() {
        let b: Bipartition = "3,1|2".parse().unwrap();
        assert_eq!(b, bp(&[3, 1], &[2]));
        assert_eq!(b.to_string(), "3,1|2");
        assert_eq!("-|-".parse::<Bipartition>().unwrap(), Bipartition::trivial());
        assert_eq!(Bipartition::trivial().to_string(), "-|-");
        assert_eq!("2".parse::<Bipartition>().unwrap(), bp(&[2], &[]));
    }

    fn arb_strict() -> impl Strategy<Value = StrictPartition> {
        (0usize..9).prop_flat_map(|n| {
            let all = enumerate_strict(n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn add_remove_adjoint(l in arb_strict(), n in arb_strict()) {
            prop_assert_eq!(l.add_box().contains(&n), n.remove_box().contains(&l));
        }

        #[test]
        fn degree_drops_with_both_sizes(l in arb_strict(), m in arb_strict()) {
            let b = Bipartition::new(l.clone(), m.clone());
            for l2 in l.remove_box() {
                for m2 in m.remove_box() {
                    let lower = Bipartition::new(l2.clone(), m2);
                    prop_assert_eq!(b.degree(), lower.degree() + 1);
                }
            }
        }

        #[test]
        fn parse_display_roundtrip(l in arb_strict(), m in arb_strict()) {
            let b = Bipartition::new(l, m);
            prop_assert_eq!(b.to_string().parse::<Bipartition>().unwrap(), b);
        }
    }
}
