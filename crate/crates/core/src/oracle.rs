//! Brute-force verification at finite rank: the queer Lie superalgebra q(n)
//! acting on tensor powers of its natural module, highest-weight vectors, and
//! decomposition checks. Everything here is exact.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagrams;
use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat, SparseVec};
use crate::partitions::{enumerate_strict, StrictPartition};

/// Homogeneous generator of q(n). `Even(i, j)` sends `e_j ↦ e_i`, `ē_j ↦ ē_i`;
/// `Odd(i, j)` sends `e_j ↦ ē_i`, `ē_j ↦ e_i`. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Even(usize, usize),
    Odd(usize, usize),
}

impl Generator {
    pub fn is_odd(self) -> bool {
        matches!(self, Generator::Odd(..))
    }

    /// Action on a basis vector of V_n, coded as `2 i + bar`.
    fn apply(self, code: u32) -> Option<u32> {
        let (idx, bar) = ((code / 2) as usize, code % 2);
        match self {
            Generator::Even(i, j) if idx == j => Some(2 * i as u32 + bar),
            Generator::Odd(i, j) if idx == j => Some(2 * i as u32 + (1 - bar)),
            _ => None,
        }
    }
}

/// q(n) in its defining representation on `V_n` (basis `e_1..e_n, ē_1..ē_n`).
pub struct FiniteRankAlgebra {
    pub n: usize,
}

impl FiniteRankAlgebra {
    pub fn new(n: usize) -> Self {
        FiniteRankAlgebra { n }
    }

    pub fn basis(&self) -> Vec<Generator> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(Generator::Even(i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                out.push(Generator::Odd(i, j));
            }
        }
        out
    }

    /// Matrix of a generator in the ordered basis `e_1, ē_1, e_2, ē_2, …`.
    pub fn matrix(&self, g: Generator) -> Vec<Vec<i64>> {
        let dim = 2 * self.n;
        let mut m = vec![vec![0; dim]; dim];
        for col in 0..dim as u32 {
            if let Some(row) = g.apply(col) {
                m[row as usize][col as usize] = 1;
            }
        }
        m
    }

    /// The parity operator `P`: `e_i ↦ ē_i`, `ē_i ↦ −e_i`.
    pub fn parity_operator(&self) -> Vec<Vec<i64>> {
        let dim = 2 * self.n;
        let mut m = vec![vec![0; dim]; dim];
        for i in 0..self.n {
            m[2 * i + 1][2 * i] = 1;
            m[2 * i][2 * i + 1] = -1;
        }
        m
    }
}

/// Vectors in `V_n^{⊗r}`; a basis tensor is the mixed-radix number formed by
/// its factor codes.
#[derive(Clone, Copy, Debug)]
pub struct TensorSpace {
    pub n: usize,
    pub r: usize,
}

pub type TensorVec = SparseVec<u64>;

impl TensorSpace {
    pub fn new(n: usize, r: usize) -> Self {
        TensorSpace { n, r }
    }

    fn base(&self) -> u64 {
        2 * self.n as u64
    }

    pub fn decode(&self, key: u64) -> Vec<u32> {
        let mut codes = vec![0u32; self.r];
        let mut k = key;
        for slot in codes.iter_mut().rev() {
            *slot = (k % self.base()) as u32;
            k /= self.base();
        }
        codes
    }

    pub fn encode(&self, codes: &[u32]) -> u64 {
        codes.iter().fold(0u64, |acc, &c| acc * self.base() + c as u64)
    }

    pub fn parity_of(&self, key: u64) -> u32 {
        self.decode(key).iter().map(|c| c % 2).sum::<u32>() % 2
    }

    /// `g` acting on `V^{⊗r}` through the super Leibniz rule.
    pub fn act(&self, g: Generator, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::new();
        for (&key, coeff) in v {
            let mut codes = self.decode(key);
            let mut before = 0u32;
            for pos in 0..self.r {
                let c = codes[pos];
                if let Some(image) = g.apply(c) {
                    codes[pos] = image;
                    let sign = g.is_odd() && before % 2 == 1;
                    let k = self.encode(&codes);
                    let entry = out.entry(k).or_insert_with(Rat::zero);
                    if sign {
                        *entry -= coeff;
                    } else {
                        *entry += coeff;
                    }
                    codes[pos] = c;
                }
                before += c % 2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// All basis tensors of the given weight (content vector of length `n`).
    pub fn weight_basis(&self, weight: &[u32]) -> Vec<u64> {
        let mut out = Vec::new();
        let mut remaining = weight.to_vec();
        let mut codes = Vec::with_capacity(self.r);
        fn rec(space: &TensorSpace, remaining: &mut [u32], codes: &mut Vec<u32>, out: &mut Vec<u64>) {
            if codes.len() == space.r {
                out.push(space.encode(codes));
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i] == 0 {
                    continue;
                }
                remaining[i] -= 1;
                for bar in 0..2 {
                    codes.push(2 * i as u32 + bar);
                    rec(space, remaining, codes, out);
                    codes.pop();
                }
                remaining[i] += 1;
            }
        }
        if weight.iter().sum::<u32>() as usize == self.r && weight.len() == self.n {
            rec(self, &mut remaining, &mut codes, &mut out);
        }
        out.sort_unstable();
        out
    }

    /// Concatenation `x ⊗ y` with `x ∈ V^{⊗r}`, `y ∈ V^{⊗s}`.
    pub fn tensor(&self, other: &TensorSpace, x: &TensorVec, y: &TensorVec) -> TensorVec {
        let shift = other.base().pow(other.r as u32);
        let mut out = TensorVec::new();
        for (kx, cx) in x {
            for (ky, cy) in y {
                out.insert(kx * shift + ky, cx * cy);
            }
        }
        out
    }
}

pub fn raising_operators(weight: &[u32]) -> Vec<Generator> {
    let mut ops = Vec::new();
    for i in 0..weight.len().saturating_sub(1) {
        if weight[i + 1] > 0 {
            ops.push(Generator::Even(i, i + 1));
            ops.push(Generator::Odd(i, i + 1));
        }
    }
    ops
}

// images of a family of vectors under all raising operators, as one stacked vector each
fn raising_images(space: &TensorSpace, weight: &[u32], vectors: &[TensorVec]) -> Vec<SparseVec<(usize, u64)>> {
    let ops = raising_operators(weight);
    vectors
        .iter()
        .map(|v| {
            let mut stacked = SparseVec::new();
            for (oi, &op) in ops.iter().enumerate() {
                for (k, c) in space.act(op, v) {
                    stacked.insert((oi, k), c);
                }
            }
            stacked
        })
        .collect()
}

/// Basis of the highest-weight vectors of the given weight in `V^{⊗r}`, split
/// by parity (even part first).
pub fn singular_vectors(space: &TensorSpace, weight: &[u32]) -> [Vec<TensorVec>; 2] {
    let basis = space.weight_basis(weight);
    let mut out: [Vec<TensorVec>; 2] = [Vec::new(), Vec::new()];
    for parity in 0..2 {
        let cols: Vec<TensorVec> = basis
            .iter()
            .filter(|&&k| space.parity_of(k) == parity)
            .map(|&k| TensorVec::from([(k, Rat::one())]))
            .collect();
        let images = raising_images(space, weight, &cols);
        for rel in linalg::kernel(images) {
            let mut v = TensorVec::new();
            for (i, c) in rel {
                linalg::axpy(&mut v, &c, &cols[i]);
            }
            out[parity as usize].push(v);
        }
    }
    out
}

/// Dimension of the simple Clifford module carried by a highest-weight space.
pub fn clifford_dim(lambda: &StrictPartition) -> usize {
    1 << lambda.len().div_ceil(2)
}

/// Dimension of the endomorphism superalgebra of a simple module.
pub fn end_dim(lambda: &StrictPartition) -> usize {
    1 << lambda.parity()
}

fn padded(lambda: &StrictPartition, n: usize) -> Vec<u32> {
    let mut w = lambda.parts().to_vec();
    w.resize(n, 0);
    w
}

// root order: partial sums of `alpha` bounded by those of `top`
fn below(alpha: &[u32], top: &[u32]) -> bool {
    let (mut a, mut t) = (0u32, 0u32);
    for i in 0..alpha.len() {
        a += alpha[i];
        t += top[i];
        if a > t {
            return false;
        }
    }
    a == t
}

/// A submodule of `V^{⊗r}` generated by a space of highest-weight vectors,
/// with its weight spaces computed lazily by applying lowering operators.
pub struct GeneratedModule {
    pub space: TensorSpace,
    pub top: Vec<u32>,
    cache: HashMap<Vec<u32>, Vec<TensorVec>>,
}

impl GeneratedModule {
    pub fn new(space: TensorSpace, top: Vec<u32>, top_space: Vec<TensorVec>) -> Self {
        let mut cache = HashMap::new();
        cache.insert(top.clone(), linalg::independent_subset(top_space));
        GeneratedModule { space, top, cache }
    }

    pub fn weight_space(&mut self, alpha: &[u32]) -> Vec<TensorVec> {
        if let Some(b) = self.cache.get(alpha) {
            return b.clone();
        }
        let mut vectors = Vec::new();
        if below(alpha, &self.top) {
            for i in 0..alpha.len().saturating_sub(1) {
                if alpha[i + 1] == 0 {
                    continue;
                }
                let mut higher = alpha.to_vec();
                higher[i] += 1;
                higher[i + 1] -= 1;
                let source = self.weight_space(&higher);
                for op in [Generator::Even(i + 1, i), Generator::Odd(i + 1, i)] {
                    vectors.extend(source.iter().map(|v| self.space.act(op, v)));
                }
            }
        }
        vectors.retain(|v| !v.is_empty());
        let basis = linalg::independent_subset(vectors);
        self.cache.insert(alpha.to_vec(), basis.clone());
        basis
    }

    /// Dimension summed over all weights of `V_n^{⊗r}`.
    pub fn total_dim(&mut self) -> usize {
        compositions(self.space.r as u32, self.space.n).iter().map(|a| self.weight_space(a).len()).sum()
    }
}

pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(left - k, parts, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut cur, &mut out);
    out
}

/// A homogeneous highest-weight vector of weight λ in `V_n^{⊗|λ|}`, searched
/// for inside `(copies of V(λ − □)) ⊗ V` to keep the linear algebra small.
pub fn highest_weight_vector(lambda: &StrictPartition, n: usize) -> TensorVec {
    let Some(smaller) = lambda.remove_box().pop() else {
        return TensorVec::from([(0, Rat::one())]);
    };
    let (mut x, _) = few_copies(&smaller, n);
    let single = TensorSpace::new(n, 1);
    let top = padded(lambda, n);
    let mut columns: [Vec<TensorVec>; 2] = [Vec::new(), Vec::new()];
    for i in 0..lambda.len() {
        let mut alpha = top.clone();
        alpha[i] -= 1;
        for v in x.weight_space(&alpha) {
            let parity = x.space.parity_of(*v.keys().next().expect("nonzero"));
            for bar in 0..2u32 {
                let e = TensorVec::from([(2 * i as u64 + bar as u64, Rat::one())]);
                columns[((parity + bar) % 2) as usize].push(x.space.tensor(&single, &v, &e));
            }
        }
    }
    let space = TensorSpace::new(n, lambda.size());
    for cols in &columns {
        if let Some(rel) = linalg::kernel(raising_images(&space, &top, cols)).into_iter().next() {
            let mut v = TensorVec::new();
            for (i, c) in rel {
                linalg::axpy(&mut v, &c, &cols[i]);
            }
            return v;
        }
    }
    unreachable!("V(λ) occurs in V(λ − □) ⊗ V")
}

/// A few copies of `V_n(λ)` inside `V_n^{⊗|λ|}`: the submodule generated by
/// the Clifford orbit of one homogeneous highest-weight vector. Returns the
/// module and the number of copies it contains.
pub fn few_copies(lambda: &StrictPartition, n: usize) -> (GeneratedModule, usize) {
    let space = TensorSpace::new(n, lambda.size());
    let top = padded(lambda, n);
    let v = highest_weight_vector(lambda, n);
    let mut orbit = Vec::new();
    for subset in 0u32..(1 << lambda.len()) {
        let mut w = v.clone();
        for j in (0..lambda.len()).rev() {
            if subset & (1 << j) != 0 {
                w = space.act(Generator::Odd(j, j), &w);
            }
        }
        orbit.push(w);
    }
    let orbit = linalg::independent_subset(orbit);
    let copies = orbit.len() / clifford_dim(lambda);
    (GeneratedModule::new(space, top, orbit), copies)
}

/// `dim Hom(V(μ), V(λ) ⊗ V(ν))` at rank `n`, counting maps of both parities,
/// from highest-weight vectors of weight μ in a tensor product of explicit
/// copies of `V(λ)` and `V(ν)`.
pub fn singular_mult(
    lambda: &StrictPartition,
    nu: &StrictPartition,
    mu: &StrictPartition,
    n: usize,
) -> Result<u64> {
    let required = lambda.size() + nu.size();
    if n < required.max(1) {
        return Err(Error::RankTooSmall { rank: n, required: required.max(1) });
    }
    if mu.size() != required || mu.len() > n {
        return Ok(0);
    }
    let (mut x, jx) = few_copies(lambda, n);
    let (mut y, jy) = few_copies(nu, n);
    let target = padded(mu, n);
    let mut columns = Vec::new();
    for alpha in compositions(lambda.size() as u32, n) {
        if alpha.iter().zip(&target).any(|(a, m)| a > m) {
            continue;
        }
        let beta: Vec<u32> = target.iter().zip(&alpha).map(|(m, a)| m - a).collect();
        let xs = x.weight_space(&alpha);
        if xs.is_empty() {
            continue;
        }
        let ys = y.weight_space(&beta);
        for a in &xs {
            for b in &ys {
                columns.push(x.space.tensor(&y.space, a, b));
            }
        }
    }
    let total = TensorSpace::new(n, required);
    let images = raising_images(&total, &target, &columns);
    let singular = columns.len() - linalg::rank(images);
    let per_copy = clifford_dim(mu) * jx * jy;
    if singular % per_copy != 0 {
        return Err(Error::Invalid(format!(
            "highest-weight space of dimension {singular} is not a multiple of {per_copy}"
        )));
    }
    Ok((singular / per_copy * end_dim(mu)) as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct SergeevRow {
    pub lambda: StrictPartition,
    pub isotypic_dim: usize,
    pub simple_dim: usize,
    pub multiplicity_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SergeevReport {
    pub r: usize,
    pub n: usize,
    pub rows: Vec<SergeevRow>,
    pub ambient_dim: usize,
    pub ok: bool,
}

/// Splits `V_n^{⊗r}` into isotypic components and checks that the
/// multiplicity spaces have integral dimensions which account for everything.
pub fn sergeev_dim_check(r: usize, n: usize) -> Result<SergeevReport> {
    if n < r {
        return Err(Error::RankTooSmall { rank: n, required: r });
    }
    let space = TensorSpace::new(n, r);
    let mut rows = Vec::new();
    let mut ok = true;
    let mut covered = 0;
    for lambda in enumerate_strict(r) {
        let top = padded(&lambda, n);
        let [even, odd] = singular_vectors(&space, &top);
        let isotypic_dim = GeneratedModule::new(space, top, even.into_iter().chain(odd).collect()).total_dim();
        let (mut copies, j) = few_copies(&lambda, n);
        let simple_dim = copies.total_dim() / j;
        let scaled = isotypic_dim << lambda.parity();
        let multiplicity_dim = scaled.is_multiple_of(simple_dim).then(|| scaled / simple_dim);
        ok &= multiplicity_dim.is_some();
        covered += isotypic_dim;
        rows.push(SergeevRow { lambda, isotypic_dim, simple_dim, multiplicity_dim });
    }
    let ambient_dim = (2 * n).pow(r as u32);
    ok &= covered == ambient_dim;
    Ok(SergeevReport { r, n, rows, ambient_dim, ok })
}

/// Dimension of the super-centralizer of the odd Cartan action on the
/// highest-weight space of weight λ in `V^{⊗|λ|}`, with that space's dimension.
pub fn highest_weight_centralizer(lambda: &StrictPartition, n: usize) -> (usize, usize) {
    let space = TensorSpace::new(n, lambda.size());
    let top = padded(lambda, n);
    let [even, odd] = singular_vectors(&space, &top);
    let basis: Vec<(TensorVec, u32)> =
        even.into_iter().map(|v| (v, 0)).chain(odd.into_iter().map(|v| (v, 1))).collect();
    let d = basis.len();
    let mut echelon = linalg::Echelon::new();
    for (v, _) in &basis {
        echelon.insert(v.clone());
    }
    // matrices of H̄_j on the basis: column c is the image of basis vector c
    let mats: Vec<Vec<SparseVec<usize>>> = (0..lambda.len())
        .map(|j| {
            basis
                .iter()
                .map(|(v, _)| echelon.solve(&space.act(Generator::Odd(j, j), v)).expect("h-stable"))
                .collect()
        })
        .collect();
    // unknown X_{a,b} (row a, column b); homogeneous of parity s when parity(a)+parity(b) = s
    let mut dim = 0;
    for s in 0..2u32 {
        let unknowns: Vec<(usize, usize)> = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .filter(|&(a, b)| (basis[a].1 + basis[b].1) % 2 == s)
            .collect();
        let sign = if s == 0 { rat(-1) } else { rat(1) };
        // X H − (−1)^s H X = 0, entry (a, c): Σ_b X_ab H_bc − (−1)^s Σ_b H_ab X_bc
        let images: Vec<SparseVec<(usize, usize, usize)>> = unknowns
            .iter()
            .map(|&(a, b)| {
                let mut eq = SparseVec::new();
                for (j, h) in mats.iter().enumerate() {
                    for (c, col) in h.iter().enumerate() {
                        if let Some(x) = col.get(&b) {
                            *eq.entry((j, a, c)).or_insert_with(Rat::zero) += x;
                        }
                    }
                    for (row, x) in &h[a] {
                        *eq.entry((j, *row, b)).or_insert_with(Rat::zero) += &sign * x;
                    }
                }
                eq.retain(|_, x: &mut Rat| !x.is_zero());
                eq
            })
            .collect();
        dim += linalg::kernel(images).len();
    }
    (d, dim)
}

/// Singular multiplicities for all triples with `|λ| + |ν| ≤ max_degree`,
/// keyed by `(λ, ν, μ)` and restricted to nonzero values.
pub fn singular_table(max_degree: usize, n: usize) -> Result<BTreeMap<(StrictPartition, StrictPartition, StrictPartition), u64>> {
    use rayon::prelude::*;
    let mut triples = Vec::new();
    for d in 0..=max_degree {
        for a in 0..=d {
            for l in enumerate_strict(a) {
                for v in enumerate_strict(d - a) {
                    for m in enumerate_strict(d) {
                        if m.contains(&l) && m.contains(&v) {
                            triples.push((l.clone(), v.clone(), m));
                        }
                    }
                }
            }
        }
    }
    let values: Vec<_> = triples
        .into_par_iter()
        .map(|(l, v, m)| singular_mult(&l, &v, &m, n).map(|x| ((l, v, m), x)))
        .collect::<Result<_>>()?;
    Ok(values.into_iter().filter(|(_, x)| *x > 0).collect())
}

/// Whether the operators `γ(d)`, `d ∈ D(p, q, r)`, are linearly independent
/// on `T^{p,q}` at rank `n`.
pub fn gamma_rank_check(p: usize, q: usize, r: usize, n: usize) -> Result<bool> {
    if n < p + q {
        return Err(Error::RankTooSmall { rank: n, required: p + q });
    }
    Ok(diagrams::gamma_rank(p, q, r, n) == diagrams::enumerate_diagrams(p, q, r).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::sp;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn generators_supercommute_with_parity_operator() {
        let alg = FiniteRankAlgebra::new(3);
        let p = alg.parity_operator();
        assert_eq!(alg.basis().len(), 2 * 9);
        for g in alg.basis() {
            let m = alg.matrix(g);
            let (xp, px) = (mat_mul(&m, &p), mat_mul(&p, &m));
            for i in 0..6 {
                for j in 0..6 {
                    let s = if g.is_odd() { xp[i][j] + px[i][j] } else { xp[i][j] - px[i][j] };
                    assert_eq!(s, 0, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn lifted_action_respects_supercommutators() {
        // [Ē_01, Ē_12] = E_02 on V^{⊗2}
        let space = TensorSpace::new(3, 2);
        let (x, y) = (Generator::Odd(0, 1), Generator::Odd(1, 2));
        for key in 0..36u64 {
            let v = TensorVec::from([(key, Rat::one())]);
            let mut lhs = space.act(x, &space.act(y, &v));
            linalg::axpy(&mut lhs, &Rat::one(), &space.act(y, &space.act(x, &v)));
            assert_eq!(lhs, space.act(Generator::Even(0, 2), &v));
        }
    }

    #[test]
    fn odd_cartan_squares_to_cartan() {
        let space = TensorSpace::new(2, 3);
        for key in 0..64u64 {
            let v = TensorVec::from([(key, Rat::one())]);
            let h = Generator::Odd(1, 1);
            assert_eq!(space.act(h, &space.act(h, &v)), space.act(Generator::Even(1, 1), &v));
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(singular_mult(&sp(&[1]), &StrictPartition::empty(), &sp(&[1]), 3).unwrap(), 2);
        assert_eq!(singular_mult(&sp(&[1]), &sp(&[1]), &sp(&[2]), 4).unwrap(), 4);
        assert!(StrictPartition::new(vec![1, 1]).is_err());
        assert!(matches!(
            singular_mult(&sp(&[1]), &sp(&[1]), &sp(&[2]), 1),
            Err(Error::RankTooSmall { .. })
        ));
    }

    #[test]
    fn clifford_structure_of_highest_weight_spaces() {
        // S ≅ C^m with End(S) = Mat_m(End C): dim S = m c, dim End = m² e
        for lambda in [sp(&[1]), sp(&[2]), sp(&[2, 1]), sp(&[3])] {
            let (d, end) = highest_weight_centralizer(&lambda, lambda.size());
            let (c, e) = (clifford_dim(&lambda), end_dim(&lambda));
            assert_eq!(d % c, 0, "{lambda}");
            let m = d / c;
            assert_eq!(end, m * m * e, "{lambda}");
        }
    }

    #[test]
    fn sergeev_small_cases() {
        for (r, n) in [(1, 2), (2, 3), (3, 3)] {
            let report = sergeev_dim_check(r, n).unwrap();
            assert!(report.ok, "{report:?}");
        }
        let report = sergeev_dim_check(1, 3).unwrap();
        assert_eq!(report.rows[0].simple_dim, 6);
    }

    #[test]
    fn stable_in_rank() {
        for (l, v, m) in [(sp(&[2]), sp(&[1]), sp(&[2, 1])), (sp(&[1]), sp(&[1]), sp(&[2]))] {
            let a = singular_mult(&l, &v, &m, 3).unwrap();
            let b = singular_mult(&l, &v, &m, 4).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn gamma_rank_examples() {
        assert!(gamma_rank_check(1, 1, 0, 2).unwrap());
        assert!(gamma_rank_check(1, 1, 1, 2).unwrap());
        assert!(gamma_rank_check(2, 1, 1, 3).unwrap());
        assert!(matches!(gamma_rank_check(2, 2, 0, 3), Err(Error::RankTooSmall { .. })));
    }
}
