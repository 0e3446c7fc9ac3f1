//! Marked two-row diagrams spanning `Hom(T^{p,q}, T^{p-r,q-r})` and their
//! realization as explicit operators on mixed tensors at finite rank.
//!
//! Top nodes are numbered `1..=p` (white, V factors) then `p+1..=p+q` (black,
//! W factors); bottom nodes likewise `1..=p-r` then `p-r+1..=p+q-2r`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, SparseVec};
use crate::parity_ring::GradedInt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Diagram {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    /// Top-row edges `(white, black, marked)`, sorted by white node.
    pub pairs: Vec<(usize, usize, bool)>,
    /// For each bottom node (in order) the top node it joins and the mark.
    pub through: Vec<(usize, bool)>,
}

impl Diagram {
    pub fn new(p: usize, q: usize, r: usize, mut pairs: Vec<(usize, usize, bool)>, through: Vec<(usize, bool)>) -> Result<Self> {
        let bad = |why: &str| Err(Error::Invalid(format!("diagram ({p},{q},{r}): {why}")));
        if r > p.min(q) {
            return bad("r exceeds min(p, q)");
        }
        if pairs.len() != r || through.len() != p + q - 2 * r {
            return bad("wrong number of edges");
        }
        let mut seen = vec![false; p + q + 1];
        let mut visit = |node: usize| -> bool {
            if node == 0 || node > p + q || seen[node] {
                return false;
            }
            seen[node] = true;
            true
        };
        for &(w, b, _) in &pairs {
            if !(visit(w) && visit(b)) || w > p || b <= p {
                return bad("top edges must join a white node to a black node");
            }
        }
        for (j, &(top, _)) in through.iter().enumerate() {
            let bottom_white = j < p - r;
            if !visit(top) || bottom_white != (top <= p) {
                return bad("through edges must join nodes of one color");
            }
        }
        pairs.sort_unstable();
        Ok(Diagram { p, q, r, pairs, through })
    }

    pub fn identity(p: usize, q: usize) -> Self {
        Diagram { p, q, r: 0, pairs: Vec::new(), through: (1..=p + q).map(|j| (j, false)).collect() }
    }

    pub fn bottom_shape(&self) -> (usize, usize) {
        (self.p - self.r, self.q - self.r)
    }

    pub fn marked_edges(&self) -> usize {
        self.pairs.iter().filter(|e| e.2).count() + self.through.iter().filter(|e| e.1).count()
    }
}

impl fmt::Display for Diagram {
    /// `p q r | pairs: (i,j) (k,l)* | through: 1->1 2->4*`, `*` marking an edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = |m: bool| if m { "*" } else { "" };
        write!(f, "{} {} {} | pairs:", self.p, self.q, self.r)?;
        for &(w, b, m) in &self.pairs {
            write!(f, " ({w},{b}){}", star(m))?;
        }
        f.write_str(" | through:")?;
        for (j, &(top, m)) in self.through.iter().enumerate() {
            write!(f, " {}->{top}{}", j + 1, star(m))?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("diagram {s:?}"));
        let sections: Vec<&str> = s.split('|').map(str::trim).collect();
        let [shape, pairs, through] = sections[..] else { return Err(err()) };
        let dims: Vec<usize> = shape.split_whitespace().map(|t| t.parse().map_err(|_| err())).collect::<Result<_>>()?;
        let [p, q, r] = dims[..] else { return Err(err()) };
        let marked = |t: &str| -> (String, bool) {
            match t.strip_suffix('*') {
                Some(rest) => (rest.to_string(), true),
                None => (t.to_string(), false),
            }
        };
        let pairs = pairs
            .strip_prefix("pairs:")
            .ok_or_else(err)?
            .split_whitespace()
            .map(|t| {
                let (body, m) = marked(t);
                let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(err)?;
                let (a, b) = inner.split_once(',').ok_or_else(err)?;
                Ok((a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?, m))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut through = through
            .strip_prefix("through:")
            .ok_or_else(err)?
            .split_whitespace()
            .map(|t| {
                let (body, m) = marked(t);
                let (a, b) = body.split_once("->").ok_or_else(err)?;
                Ok((a.parse::<usize>().map_err(|_| err())?, b.parse::<usize>().map_err(|_| err())?, m))
            })
            .collect::<Result<Vec<_>>>()?;
        through.sort_unstable();
        if through.iter().enumerate().any(|(i, t)| t.0 != i + 1) {
            return Err(err());
        }
        Diagram::new(p, q, r, pairs, through.into_iter().map(|(_, t, m)| (t, m)).collect())
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut s in subsets(&items[1..], k - 1) {
        s.insert(0, items[0]);
        out.push(s);
    }
    out.extend(subsets(&items[1..], k));
    out
}

fn mark_patterns(len: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << len).map(move |bits| (0..len).map(|i| bits & (1 << i) != 0).collect())
}

/// Every diagram in `D(p, q, r)`; empty when `r > min(p, q)`.
pub fn enumerate_diagrams(p: usize, q: usize, r: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    if r > p.min(q) {
        return out;
    }
    let whites: Vec<usize> = (1..=p).collect();
    let blacks: Vec<usize> = (p + 1..=p + q).collect();
    for ws in subsets(&whites, r) {
        for bs in subsets(&blacks, r) {
            let free_w: Vec<usize> = whites.iter().copied().filter(|w| !ws.contains(w)).collect();
            let free_b: Vec<usize> = blacks.iter().copied().filter(|b| !bs.contains(b)).collect();
            for matching in permutations(&bs) {
                for pair_marks in mark_patterns(r) {
                    let pairs: Vec<_> = ws.iter().zip(&matching).zip(&pair_marks).map(|((&w, &b), &m)| (w, b, m)).collect();
                    for tw in permutations(&free_w) {
                        for tb in permutations(&free_b) {
                            let tops: Vec<usize> = tw.iter().chain(&tb).copied().collect();
                            for marks in mark_patterns(tops.len()) {
                                let through = tops.iter().copied().zip(marks).collect();
                                out.push(Diagram { p, q, r, pairs: pairs.clone(), through });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn factorial(n: usize) -> num_bigint::BigInt {
    (1..=n).map(num_bigint::BigInt::from).product()
}

/// `p! q! θ^{p+q-r} / r!`, the graded dimension of `Hom(T^{p,q}, T^{p-r,q-r})`.
pub fn dim_c(p: usize, q: usize, r: usize) -> GradedInt {
    if r > p.min(q) {
        return GradedInt::zero();
    }
    let coeff = factorial(p) * factorial(q) / factorial(r);
    GradedInt::theta_pow((p + q - r) as u32).scale(&coeff)
}

/// `Σ dim_c(p, q, r)` over `p + q ≤ k`.
pub fn graded_dim_a(k: usize, r: usize) -> GradedInt {
    let mut total = GradedInt::zero();
    for p in 0..=k {
        for q in 0..=k - p {
            total += &dim_c(p, q, r);
        }
    }
    total
}

/// Stacks `d2` below `d1` (so `d1` acts first) and removes the middle row.
pub fn concat(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    let (bp, bq) = d1.bottom_shape();
    if (d2.p, d2.q) != (bp, bq) {
        return Err(Error::ShapeMismatch(bp, bq, d2.p, d2.q));
    }
    let up = |middle: usize| d1.through[middle - 1];
    let mut pairs = d1.pairs.clone();
    for &(mw, mb, m) in &d2.pairs {
        let (x, a) = up(mw);
        let (y, b) = up(mb);
        pairs.push((x, y, a ^ m ^ b));
    }
    let through = d2.through.iter().map(|&(mid, c)| {
        let (x, a) = up(mid);
        (x, a ^ c)
    });
    Diagram::new(d1.p, d1.q, d1.r + d2.r, pairs, through.collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elementary {
    /// Swap of the strands at positions `i`, `i+1` (same color).
    S { p: usize, q: usize, i: usize },
    /// Mark on the strand at position `i`.
    O { p: usize, q: usize, i: usize },
    /// Contraction of white node `p` with black node `p+1`.
    T { p: usize, q: usize },
}

impl Elementary {
    pub fn diagram(self) -> Diagram {
        match self {
            Elementary::S { p, q, i } => {
                assert!(i >= 1 && i < p + q && i != p, "s({p},{q},{i}) is not defined");
                let mut d = Diagram::identity(p, q);
                d.through.swap(i - 1, i);
                d
            }
            Elementary::O { p, q, i } => {
                let mut d = Diagram::identity(p, q);
                d.through[i - 1].1 = true;
                d
            }
            Elementary::T { p, q } => {
                assert!(p >= 1 && q >= 1, "t({p},{q}) needs both colors");
                let through = (1..p).chain(p + 2..=p + q).map(|j| (j, false)).collect();
                Diagram { p, q, r: 1, pairs: vec![(p, p + 1, false)], through }
            }
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elementary::S { p, q, i } => write!(f, "s({p},{q},{i})"),
            Elementary::O { p, q, i } => write!(f, "o({p},{q},{i})"),
            Elementary::T { p, q } => write!(f, "t({p},{q})"),
        }
    }
}

/// Writes `d = t ⋯ t · o ⋯ o · s ⋯ s`, listed left to right; the rightmost
/// factor acts first.
pub fn canonical_decomposition(d: &Diagram) -> Vec<Elementary> {
    let (p, q, r) = (d.p, d.q, d.r);
    // arrangement after the permutation part: position -> top node
    let mut arr = vec![0usize; p + q + 1];
    let mut marked = Vec::new();
    for j in 1..=p - r {
        let (top, m) = d.through[j - 1];
        arr[j] = top;
        if m {
            marked.push(j);
        }
    }
    for (k, &(w, b, m)) in d.pairs.iter().enumerate() {
        arr[p - r + 1 + k] = w;
        arr[p + r - k] = b;
        if m {
            marked.push(p - r + 1 + k);
        }
    }
    for k in 1..=q - r {
        let (top, m) = d.through[p - r + k - 1];
        arr[p + r + k] = top;
        if m {
            marked.push(p + r + k);
        }
    }
    marked.sort_unstable();
    // bubble sort `arr` to the identity; the recorded swaps, read left to right,
    // form the permutation part
    let mut swaps = Vec::new();
    let mut work = arr[1..].to_vec();
    loop {
        let mut changed = false;
        for i in 0..work.len().saturating_sub(1) {
            if work[i] > work[i + 1] {
                work.swap(i, i + 1);
                swaps.push(i + 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<Elementary> = (0..r).map(|k| Elementary::T { p: p - r + 1 + k, q: q - r + 1 + k }).collect();
    out.extend(marked.into_iter().map(|i| Elementary::O { p, q, i }));
    out.extend(swaps.into_iter().map(|i| Elementary::S { p, q, i }));
    out
}

/// Concatenates a word in the normal order of [`canonical_decomposition`].
pub fn compose_word(p: usize, q: usize, word: &[Elementary]) -> Result<Diagram> {
    word.iter().rev().try_fold(Diagram::identity(p, q), |acc, e| concat(&acc, &e.diagram()))
}

/// A linear map between mixed tensor spaces sending each basis tensor to a
/// signed basis tensor or to zero. Tensor keys use factor codes `2i + bar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    pub n: usize,
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub images: BTreeMap<u64, (u64, i8)>,
}

fn decode(key: u64, len: usize, n: usize) -> Vec<u32> {
    let base = 2 * n as u64;
    let mut codes = vec![0u32; len];
    let mut k = key;
    for c in codes.iter_mut().rev() {
        *c = (k % base) as u32;
        k /= base;
    }
    codes
}

fn encode(codes: &[u32], n: usize) -> u64 {
    codes.iter().fold(0, |acc, &c| acc * 2 * n as u64 + c as u64)
}

// one elementary operator on a basis tensor of T^{p,q}
fn apply_elementary(e: Elementary, codes: &mut Vec<u32>) -> Option<i8> {
    let bar = |c: u32| (c % 2) as i8;
    match e {
        Elementary::S { i, .. } => {
            let sign = if bar(codes[i - 1]) * bar(codes[i]) == 1 { -1 } else { 1 };
            codes.swap(i - 1, i);
            Some(sign)
        }
        Elementary::O { p, i, .. } => {
            let before: i8 = codes[..i - 1].iter().map(|&c| bar(c)).sum();
            let mut sign = if before % 2 == 1 { -1 } else { 1 };
            let c = codes[i - 1];
            // P(e) = ē, P(ē) = −e on V; P(f) = f̄, P(f̄) = f on W
            if i <= p && c % 2 == 1 {
                sign = -sign;
            }
            codes[i - 1] = c ^ 1;
            Some(sign)
        }
        Elementary::T { p, .. } => {
            let (v, w) = (codes[p - 1], codes[p]);
            if v != w {
                return None;
            }
            let sign = if bar(v) * bar(w) == 1 { -1 } else { 1 };
            codes.drain(p - 1..=p);
            Some(sign)
        }
    }
}

/// The operator `γ(d)` on `T^{p,q}_n`, composed from the elementary operators
/// of the canonical decomposition.
pub fn gamma_eval(d: &Diagram, n: usize) -> MonomialOperator {
    let word = canonical_decomposition(d);
    let len = d.p + d.q;
    let total = (2 * n as u64).pow(len as u32);
    let mut images = BTreeMap::new();
    for key in 0..total {
        let mut codes = decode(key, len, n);
        let mut sign = 1i8;
        let mut alive = true;
        for &e in word.iter().rev() {
            match apply_elementary(e, &mut codes) {
                Some(s) => sign *= s,
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if alive {
            images.insert(key, (encode(&codes, n), sign));
        }
    }
    MonomialOperator { n, source: (d.p, d.q), target: d.bottom_shape(), images }
}

impl MonomialOperator {
    /// `then ∘ self`.
    pub fn then(&self, then: &MonomialOperator) -> Result<MonomialOperator> {
        if self.target != then.source || self.n != then.n {
            return Err(Error::ShapeMismatch(self.target.0, self.target.1, then.source.0, then.source.1));
        }
        let images = self
            .images
            .iter()
            .filter_map(|(&k, &(mid, s))| then.images.get(&mid).map(|&(out, t)| (k, (out, s * t))))
            .collect();
        Ok(MonomialOperator { n: self.n, source: self.source, target: then.target, images })
    }

    /// `Some(±1)` when `other = ±self`.
    pub fn sign_relative_to(&self, other: &MonomialOperator) -> Option<i8> {
        if self.source != other.source || self.target != other.target || self.images.len() != other.images.len() {
            return None;
        }
        let mut sign = None;
        for (k, &(out, s)) in &self.images {
            let &(out2, t) = other.images.get(k)?;
            if out != out2 {
                return None;
            }
            let rel = s * t;
            if *sign.get_or_insert(rel) != rel {
                return None;
            }
        }
        Some(sign.unwrap_or(1))
    }

    pub fn as_vector(&self) -> SparseVec<(u64, u64)> {
        self.images.iter().map(|(&k, &(out, s))| ((k, out), rat(s as i64))).collect()
    }
}

/// Rank of the family `γ(D(p, q, r))` at rank `n`.
pub fn gamma_rank(p: usize, q: usize, r: usize, n: usize) -> usize {
    linalg::rank(enumerate_diagrams(p, q, r).iter().map(|d| gamma_eval(d, n).as_vector()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn dg(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_diagrams(1, 1, 0).len(), 4);
        assert_eq!(enumerate_diagrams(1, 1, 1).len(), 2);
        assert_eq!(enumerate_diagrams(2, 1, 1).len(), 8);
        assert!(enumerate_diagrams(3, 1, 2).is_empty());
        for d in enumerate_diagrams(2, 2, 1) {
            assert_eq!(Diagram::new(d.p, d.q, d.r, d.pairs.clone(), d.through.clone()).unwrap(), d);
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_c(1, 1, 0), GradedInt::new(2, 2));
        assert_eq!(dim_c(2, 2, 2), GradedInt::new(4, 4));
        assert_eq!(dim_c(3, 1, 2), GradedInt::zero());
        assert_eq!(dim_c(0, 0, 0), GradedInt::one());
        assert_eq!(graded_dim_a(1, 0), GradedInt::new(3, 2));
        assert_eq!(graded_dim_a(2, 1), GradedInt::theta());
        assert!(graded_dim_a(3, 2).is_zero());
    }

    #[test]
    fn dimension_recursions() {
        for p in 1..=4 {
            for q in 0..=4 {
                for r in 0..=p.min(q) {
                    let mut rhs = if r >= 1 { dim_c(p - 1, q, r - 1) } else { GradedInt::zero() };
                    rhs += &(GradedInt::theta() * dim_c(p - 1, q, r)).scale(&BigInt::from(p - r));
                    assert_eq!(dim_c(p, q, r), rhs, "({p},{q},{r})");
                }
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        for d in enumerate_diagrams(2, 2, 1).into_iter().chain(enumerate_diagrams(1, 2, 0)) {
            assert_eq!(dg(&d.to_string()), d);
        }
        assert_eq!(Diagram::identity(0, 0).to_string(), "0 0 0 | pairs: | through:");
        assert!("1 1 0 | pairs: | through: 1->2 2->1".parse::<Diagram>().is_err());
    }

    #[test]
    fn concat_examples() {
        let o = Elementary::O { p: 1, q: 0, i: 1 }.diagram();
        assert_eq!(concat(&o, &o).unwrap(), Diagram::identity(1, 0));
        for (p, q) in [(1, 1), (2, 1), (2, 2)] {
            for r in 0..=p.min(q) {
                for d in enumerate_diagrams(p, q, r) {
                    assert_eq!(concat(&Diagram::identity(p, q), &d).unwrap(), d);
                    let (bp, bq) = d.bottom_shape();
                    assert_eq!(concat(&d, &Diagram::identity(bp, bq)).unwrap(), d);
                }
            }
        }
        assert!(matches!(concat(&o, &Diagram::identity(2, 0)), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn three_diagram_figure() {
        let top = dg("2 2 0 | pairs: | through: 1->1 2->2* 3->3* 4->4");
        let middle = dg("2 2 1 | pairs: (2,3) | through: 1->1 2->4*");
        let bottom = Diagram::identity(1, 1);
        let result = concat(&concat(&top, &middle).unwrap(), &bottom).unwrap();
        assert_eq!(result, dg("2 2 1 | pairs: (2,3) | through: 1->1 2->4*"));
    }

    #[test]
    fn decomposition_examples() {
        assert!(canonical_decomposition(&Diagram::identity(1, 1)).is_empty());
        let o = Elementary::O { p: 1, q: 0, i: 1 };
        assert_eq!(canonical_decomposition(&o.diagram()), vec![o]);
        let t = Elementary::T { p: 1, q: 1 };
        assert_eq!(canonical_decomposition(&t.diagram()), vec![t]);
    }

    #[test]
    fn decomposition_roundtrip() {
        for (p, q) in [(2, 2), (3, 1), (2, 3), (3, 3)] {
            for r in 0..=p.min(q) {
                for d in enumerate_diagrams(p, q, r) {
                    let word = canonical_decomposition(&d);
                    assert_eq!(compose_word(p, q, &word).unwrap(), d, "{d}");
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let n = 2;
        let t = gamma_eval(&Elementary::T { p: 1, q: 1 }.diagram(), n);
        // e_1 ⊗ f_1 ↦ 1
        assert_eq!(t.images.get(&encode(&[0, 0], n)), Some(&(0, 1)));
        // ē_1 ⊗ f̄_1 ↦ −(f̄_1, ē_1) = −1
        assert_eq!(t.images.get(&encode(&[1, 1], n)), Some(&(0, -1)));
        assert_eq!(t.images.get(&encode(&[0, 2], n)), None);
        let o = gamma_eval(&Elementary::O { p: 1, q: 0, i: 1 }.diagram(), n);
        assert_eq!(o.images.get(&0), Some(&(1, 1)));
        assert_eq!(o.images.get(&1), Some(&(0, -1)));
        let s = gamma_eval(&Elementary::S { p: 2, q: 0, i: 1 }.diagram(), n);
        // ē_1 ⊗ ē_2 ↦ −ē_2 ⊗ ē_1
        assert_eq!(s.images.get(&encode(&[1, 3], n)), Some(&(encode(&[3, 1], n), -1)));
    }

    #[test]
    fn gamma_ranks() {
        assert_eq!(gamma_rank(1, 1, 0, 2), 4);
        assert_eq!(gamma_rank(1, 1, 1, 2), 2);
        assert_eq!(gamma_rank(2, 1, 1, 3), 8);
    }

    #[test]
    fn functoriality_up_to_sign() {
        let n = 3;
        for d1 in enumerate_diagrams(2, 1, 1) {
            for d2 in enumerate_diagrams(1, 0, 0) {
                let lhs = gamma_eval(&concat(&d1, &d2).unwrap(), n);
                let rhs = gamma_eval(&d1, n).then(&gamma_eval(&d2, n)).unwrap();
                assert!(lhs.sign_relative_to(&rhs).is_some(), "{d1} then {d2}");
            }
        }
    }
}
