//! Schur P- and Q-functions as explicit polynomials in finitely many
//! variables, and the structure constants of the Q-basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::StrictPartition;

pub type Exponents = Vec<u32>;

/// Sparse polynomial with integer coefficients in `num_vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl SymPoly {
    pub fn zero(num_vars: usize) -> Self {
        SymPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = SymPoly::zero(num_vars);
        p.add_term(vec![0; num_vars], c.into());
        p
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = SymPoly::zero(exps.len());
        p.add_term(exps, c.into());
        p
    }

    /// `Σ x_i`.
    pub fn power_sum_one(num_vars: usize) -> Self {
        let mut p = SymPoly::zero(num_vars);
        for i in 0..num_vars {
            let mut e = vec![0; num_vars];
            e[i] = 1;
            p.add_term(e, BigInt::one());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigInt) {
        debug_assert_eq!(exps.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.num_vars);
        }
        SymPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Divides every coefficient by `d`, or `None` if some coefficient is not a multiple.
    pub fn div_exact(&self, d: &BigInt) -> Option<SymPoly> {
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let (q, r) = v.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(SymPoly { num_vars: self.num_vars, terms })
    }

    /// The lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.num_vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                self.terms.get(&swapped) == Some(c)
            })
        })
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl<'a> Add<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SymPoly> for &'a SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        SymPoly {
            num_vars: self.num_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            let sign = if c.sign() == num_bigint::Sign::Minus { "-" } else if first { "" } else { "+" };
            let mag = c.magnitude();
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{sign}")?;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Memoizing builder for Q-functions in a fixed number of variables.
pub struct QFunctions {
    num_vars: usize,
    rows: Vec<SymPoly>,
    cache: HashMap<StrictPartition, SymPoly>,
}

impl QFunctions {
    pub fn new(num_vars: usize) -> Self {
        QFunctions { num_vars, rows: vec![SymPoly::constant(num_vars, 1)], cache: HashMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    // one-row q_r: coefficient of t^r in prod_i (1 + x_i t)/(1 - x_i t)
    fn ensure_rows(&mut self, max_r: usize) {
        if self.rows.len() > max_r {
            return;
        }
        let n = self.num_vars;
        let mut by_degree: Vec<SymPoly> = (0..=max_r)
            .map(|d| if d == 0 { SymPoly::constant(n, 1) } else { SymPoly::zero(n) })
            .collect();
        for var in 0..n {
            let mut next: Vec<SymPoly> = (0..=max_r).map(|_| SymPoly::zero(n)).collect();
            for (d, slot) in next.iter_mut().enumerate() {
                for k in 0..=d {
                    let mut exps = vec![0; n];
                    exps[var] = k as u32;
                    let c = if k == 0 { 1 } else { 2 };
                    let factor = SymPoly::monomial(exps, c);
                    *slot = &*slot + &(&by_degree[d - k] * &factor);
                }
            }
            by_degree = next;
        }
        self.rows = by_degree;
    }

    pub fn q_row(&mut self, r: i64) -> SymPoly {
        if r < 0 {
            return SymPoly::zero(self.num_vars);
        }
        self.ensure_rows(r as usize);
        self.rows[r as usize].clone()
    }

    /// `Q_(a,b) = q_a q_b + 2 Σ_{i≥1} (−1)^i q_{a+i} q_{b−i}` for `a > b ≥ 0`.
    fn two_row(&mut self, a: u32, b: u32) -> SymPoly {
        let (a, b) = (a as i64, b as i64);
        let mut acc = &self.q_row(a) * &self.q_row(b);
        for i in 1..=b {
            let term = &self.q_row(a + i) * &self.q_row(b - i);
            let c = if i % 2 == 0 { BigInt::from(2) } else { BigInt::from(-2) };
            acc = &acc + &term.scale(&c);
        }
        acc
    }

    pub fn q(&mut self, lambda: &StrictPartition) -> SymPoly {
        if let Some(p) = self.cache.get(lambda) {
            return p.clone();
        }
        let mut parts: Vec<u32> = lambda.parts().to_vec();
        let result = match parts.len() {
            0 => SymPoly::constant(self.num_vars, 1),
            1 => self.q_row(parts[0] as i64),
            _ => {
                if parts.len() % 2 == 1 {
                    parts.push(0);
                }
                let m = parts.len();
                let mut entries = vec![vec![SymPoly::zero(self.num_vars); m]; m];
                for i in 0..m {
                    for j in (i + 1)..m {
                        entries[i][j] = self.two_row(parts[i], parts[j]);
                    }
                }
                let idx: Vec<usize> = (0..m).collect();
                pfaffian(&entries, &idx, self.num_vars)
            }
        };
        self.cache.insert(lambda.clone(), result.clone());
        result
    }

    pub fn p(&mut self, lambda: &StrictPartition) -> SymPoly {
        let d = BigInt::one() << lambda.len();
        self.q(lambda).div_exact(&d).expect("Q_λ is divisible by 2^ℓ(λ)")
    }
}

// Expansion along the first row; `entries[i][j]` holds the upper triangle.
fn pfaffian(entries: &[Vec<SymPoly>], idx: &[usize], n: usize) -> SymPoly {
    if idx.is_empty() {
        return SymPoly::constant(n, 1);
    }
    let first = idx[0];
    let mut acc = SymPoly::zero(n);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let rest: Vec<usize> = idx.iter().copied().filter(|&k| k != first && k != j).collect();
        let minor = pfaffian(entries, &rest, n);
        let term = &entries[first][j] * &minor;
        // pos is 1-based column j-1 in the minor ordering; sign (-1)^(pos+1)
        if pos % 2 == 1 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

pub fn schur_q(lambda: &StrictPartition, num_vars: usize) -> SymPoly {
    QFunctions::new(num_vars).q(lambda)
}

pub fn schur_p(lambda: &StrictPartition, num_vars: usize) -> SymPoly {
    QFunctions::new(num_vars).p(lambda)
}

/// `Q_λ` summed over marked shifted tableaux: entries from 1' < 1 < 2' < 2 < ..., weakly
/// increasing along rows and columns, each unprimed letter at most once
/// per column and each primed letter at most once per row.
pub fn schur_q_tableaux(lambda: &StrictPartition, n: usize) -> SymPoly {
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (i..i + len as usize).map(move |j| (i, j)))
        .collect();
    let mut grid: HashMap<(usize, usize), u32> = HashMap::new();
    let mut out = SymPoly::zero(n);
    // letter code: 2k = k' (primed), 2k+1 = k, for k in 0..n
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut HashMap<(usize, usize), u32>,
        n: usize,
        out: &mut SymPoly,
    ) {
        if k == cells.len() {
            let mut e = vec![0u32; n];
            for &code in grid.values() {
                e[(code / 2) as usize] += 1;
            }
            out.add_term(e, BigInt::one());
            return;
        }
        let (i, j) = cells[k];
        for code in 0..(2 * n as u32) {
            let primed = code % 2 == 0;
            if let Some(&left) = grid.get(&(i, j.wrapping_sub(1))) {
                if left > code || (primed && left == code) {
                    continue;
                }
            }
            if i > 0 {
                if let Some(&up) = grid.get(&(i - 1, j)) {
                    if up > code || (!primed && up == code) {
                        continue;
                    }
                }
            }
            grid.insert((i, j), code);
            fill(k + 1, cells, grid, n, out);
            grid.remove(&(i, j));
        }
    }
    fill(0, &cells, &mut grid, n, &mut out);
    out
}

/// Expands `Q_λ Q_ν = Σ_μ b^μ_{λν} Q_μ` in `|λ| + |ν|` variables by
/// eliminating lex-leading monomials.
pub fn q_structure_constants(
    lambda: &StrictPartition,
    nu: &StrictPartition,
) -> Result<BTreeMap<StrictPartition, BigInt>> {
    let n = (lambda.size() + nu.size()).max(1);
    let mut qf = QFunctions::new(n);
    let mut rest = &qf.q(lambda) * &qf.q(nu);
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest.leading() {
        let parts: Vec<u32> = lead.iter().copied().take_while(|&k| k > 0).collect();
        if lead.iter().skip(parts.len()).any(|&k| k > 0) {
            return Err(Error::BasisSolveFailure(lead.clone()));
        }
        let mu = StrictPartition::new(parts).map_err(|_| Error::BasisSolveFailure(lead.clone()))?;
        let c = c.clone();
        let q_mu = qf.q(&mu);
        let pivot = q_mu.coefficient(lead);
        let (b, r) = c.div_rem(&pivot);
        if pivot.is_zero() || !r.is_zero() {
            return Err(Error::BasisSolveFailure(lead.clone()));
        }
        rest = &rest - &q_mu.scale(&b);
        out.insert(mu, b);
    }
    Ok(out)
}
