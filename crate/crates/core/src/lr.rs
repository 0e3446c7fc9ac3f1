//! Type-Q Littlewood–Richardson coefficients with values in the parity ring.
//!
//! `f^μ_{λν} = θ^E · b^μ_{λν}` in total dimension, where `b` is a structure
//! constant of Schur Q-functions and the exponent `E` was fitted against the
//! finite-rank oracle (see `data/lr_calibration.tsv`). The fitted exponent
//! depends on the triple of lengths `(ℓ(λ), ℓ(ν), ℓ(μ))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity_ring::GradedInt;
use crate::partitions::StrictPartition;
use crate::symfunc::q_structure_constants;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LRKey {
    pub lambda: StrictPartition,
    pub nu: StrictPartition,
    pub mu: StrictPartition,
}

pub type LengthClass = (usize, usize, usize);

/// Exponents fitted from every nonzero triple with `|λ| + |ν| ≤ 6`.
pub const EXPONENTS: [(LengthClass, i32); 14] = [
    ((0, 0, 0), 0),
    ((0, 1, 1), 1),
    ((0, 2, 2), 0),
    ((0, 3, 3), 1),
    ((1, 0, 1), 1),
    ((1, 1, 1), 1),
    ((1, 1, 2), 1),
    ((1, 2, 2), 0),
    ((1, 2, 3), 1),
    ((2, 0, 2), 0),
    ((2, 1, 2), 0),
    ((2, 1, 3), 1),
    ((2, 2, 2), -1),
    ((3, 0, 3), 1),
];

/// Raw data behind [`EXPONENTS`]: `λ ν μ b oracle_total` per line.
pub const CALIBRATION_DATA: &str = include_str!("../data/lr_calibration.tsv");

pub fn length_class(lambda: &StrictPartition, nu: &StrictPartition, mu: &StrictPartition) -> LengthClass {
    (lambda.len(), nu.len(), mu.len())
}

pub fn exponent(lambda: &StrictPartition, nu: &StrictPartition, mu: &StrictPartition) -> Result<i32> {
    let class = length_class(lambda, nu, mu);
    EXPONENTS
        .iter()
        .find(|(c, _)| *c == class)
        .map(|(_, e)| *e)
        .ok_or(Error::ExponentUncalibrated(class))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibrationRow {
    pub key: LRKey,
    pub b: BigInt,
    pub oracle_total: BigInt,
}

pub fn parse_calibration(text: &str) -> Result<Vec<CalibrationRow>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(Error::Parse(format!("calibration line {line:?}")));
            }
            let int = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("integer {s:?}")));
            Ok(CalibrationRow {
                key: LRKey { lambda: f[0].parse()?, nu: f[1].parse()?, mu: f[2].parse()? },
                b: int(f[3])?,
                oracle_total: int(f[4])?,
            })
        })
        .collect()
}

/// Fits one exponent per class from `oracle_total / b`. Fails when a ratio is
/// not a power of two or when two rows of one class disagree.
pub fn fit_exponents<K: Ord + Clone + std::fmt::Debug>(
    rows: &[CalibrationRow],
    class_of: impl Fn(&LRKey) -> K,
) -> std::result::Result<BTreeMap<K, i32>, String> {
    let mut out: BTreeMap<K, i32> = BTreeMap::new();
    for row in rows {
        let e = log2_ratio(&row.oracle_total, &row.b)
            .ok_or_else(|| format!("{:?}: ratio {}/{} is not a power of two", row.key, row.oracle_total, row.b))?;
        let class = class_of(&row.key);
        match out.get(&class) {
            Some(&prev) if prev != e => {
                return Err(format!("class {class:?} needs exponents {prev} and {e} (at {:?})", row.key))
            }
            _ => {
                out.insert(class, e);
            }
        }
    }
    Ok(out)
}

fn log2_ratio(num: &BigInt, den: &BigInt) -> Option<i32> {
    if num.is_zero() || den.is_zero() || num.sign() != den.sign() {
        return None;
    }
    let (mut a, mut b) = (num.magnitude().clone(), den.magnitude().clone());
    let mut e = 0;
    let two = num_bigint::BigUint::from(2u32);
    while a > b {
        if !a.is_multiple_of(&two) {
            return None;
        }
        a /= &two;
        e += 1;
    }
    while b > a {
        if !b.is_multiple_of(&two) {
            return None;
        }
        b /= &two;
        e -= 1;
    }
    (a == b).then_some(e)
}

type PairKey = (StrictPartition, StrictPartition);
type Constants = Arc<BTreeMap<StrictPartition, BigInt>>;

fn memo() -> &'static RwLock<HashMap<PairKey, Constants>> {
    static MEMO: OnceLock<RwLock<HashMap<PairKey, Constants>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Memoized `b^μ_{λν}` for all μ.
pub fn structure_constants(lambda: &StrictPartition, nu: &StrictPartition) -> Result<Constants> {
    let key = (lambda.clone(), nu.clone());
    if let Some(c) = memo().read().expect("memo lock").get(&key) {
        return Ok(c.clone());
    }
    let computed = Arc::new(q_structure_constants(lambda, nu)?);
    memo().write().expect("memo lock").insert(key, computed.clone());
    Ok(computed)
}

/// Seeds the memo table, e.g. from a persistent cache.
pub fn preload(lambda: StrictPartition, nu: StrictPartition, constants: BTreeMap<StrictPartition, BigInt>) {
    memo().write().expect("memo lock").insert((lambda, nu), Arc::new(constants));
}

/// Every memoized pair with its constants, in canonical order.
pub fn memo_snapshot() -> Vec<(StrictPartition, StrictPartition, Constants)> {
    let mut out: Vec<_> =
        memo().read().expect("memo lock").iter().map(|((l, v), c)| (l.clone(), v.clone(), c.clone())).collect();
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    out
}

pub fn b_coeff(lambda: &StrictPartition, nu: &StrictPartition, mu: &StrictPartition) -> Result<BigInt> {
    if mu.size() != lambda.size() + nu.size() {
        return Ok(BigInt::zero());
    }
    Ok(structure_constants(lambda, nu)?.get(mu).cloned().unwrap_or_default())
}

/// `f^μ_{λν} = dim Hom(V(μ), V(λ) ⊗ V(ν))`.
///
/// The graded value is a θ-multiple whenever one of the three simples is of
/// type Q; when all are of type M every copy is placed in even parity.
pub fn f_coeff(lambda: &StrictPartition, nu: &StrictPartition, mu: &StrictPartition) -> Result<GradedInt> {
    let b = b_coeff(lambda, nu, mu)?;
    if b.is_zero() {
        return Ok(GradedInt::zero());
    }
    let e = exponent(lambda, nu, mu)?;
    let total = if e >= 0 {
        b << e as usize
    } else {
        let d = BigInt::one() << (-e) as usize;
        let (q, r) = b.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Invalid(format!("b = {b} is not divisible by {d} for ({lambda}, {nu}, {mu})")));
        }
        q
    };
    if lambda.parity() + nu.parity() + mu.parity() > 0 {
        let (half, r) = total.div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(Error::NotThetaDivisible { value: GradedInt::from_int(total), power: 1 });
        }
        Ok(GradedInt::theta().scale(&half))
    } else {
        Ok(GradedInt::from_int(total))
    }
}

/// All nonzero `f^μ_{λν}` for fixed λ, ν.
pub fn f_table(lambda: &StrictPartition, nu: &StrictPartition) -> Result<BTreeMap<StrictPartition, GradedInt>> {
    structure_constants(lambda, nu)?
        .keys()
        .map(|mu| Ok((mu.clone(), f_coeff(lambda, nu, mu)?)))
        .collect()
}

/// Closed form when one factor is the natural module: `θ^{p(ν)p(μ)} θ` if μ
/// is ν plus a box, else zero.
pub fn pieri_f(nu: &StrictPartition, mu: &StrictPartition) -> GradedInt {
    if mu.covers(nu) {
        GradedInt::theta_pow((nu.parity() * mu.parity()) as u32 + 1)
    } else {
        GradedInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::singular_mult;
    use crate::partitions::{enumerate_strict, sp, strict_up_to};

    fn theta() -> GradedInt {
        GradedInt::theta()
    }

    #[test]
    fn examples() {
        assert_eq!(f_coeff(&sp(&[1]), &sp(&[2]), &sp(&[2, 1])).unwrap(), theta());
        assert_eq!(f_coeff(&sp(&[1]), &sp(&[2]), &sp(&[3])).unwrap(), GradedInt::theta_pow(2));
        assert_eq!(f_coeff(&sp(&[1]), &sp(&[1]), &sp(&[3])).unwrap(), GradedInt::zero());
        assert_eq!(f_coeff(&sp(&[1]), &sp(&[1]), &sp(&[2])).unwrap().eval_plus(), BigInt::from(4));
        assert_eq!(pieri_f(&sp(&[2]), &sp(&[2, 1])), theta());
        assert_eq!(pieri_f(&sp(&[2]), &sp(&[3])), GradedInt::theta_pow(2));
        assert_eq!(pieri_f(&sp(&[1]), &sp(&[3])), GradedInt::zero());
    }

    #[test]
    fn uncalibrated_class_is_reported() {
        // degree 7 reaches length class (3, 1, 3), outside the fitted range
        let err = f_coeff(&sp(&[3, 2, 1]), &sp(&[1]), &sp(&[4, 2, 1])).unwrap_err();
        assert!(matches!(err, Error::ExponentUncalibrated((3, 1, 3))), "{err:?}");
    }

    #[test]
    fn unit_and_symmetry() {
        for v in strict_up_to(5) {
            for m in strict_up_to(5) {
                let f = f_coeff(&StrictPartition::empty(), &v, &m).unwrap();
                if v == m {
                    assert_eq!(f.eval_plus(), BigInt::from(1 << v.parity()));
                } else {
                    assert!(f.is_zero());
                }
            }
        }
        for l in strict_up_to(3) {
            for v in strict_up_to(3) {
                assert_eq!(f_table(&l, &v).unwrap(), f_table(&v, &l).unwrap());
            }
        }
    }

    #[test]
    fn pieri_agreement() {
        for v in strict_up_to(5) {
            for m in enumerate_strict(v.size() + 1) {
                assert_eq!(f_coeff(&sp(&[1]), &v, &m).unwrap(), pieri_f(&v, &m), "{v} {m}");
            }
        }
    }

    #[test]
    fn committed_table_matches_committed_data() {
        let rows = parse_calibration(CALIBRATION_DATA).unwrap();
        assert_eq!(rows.len(), 92);
        for row in &rows {
            assert_eq!(b_coeff(&row.key.lambda, &row.key.nu, &row.key.mu).unwrap(), row.b);
        }
        let fitted = fit_exponents(&rows, |k| length_class(&k.lambda, &k.nu, &k.mu)).unwrap();
        assert_eq!(fitted, EXPONENTS.iter().cloned().collect::<BTreeMap<_, _>>());
    }

    #[test]
    fn parity_classes_alone_do_not_fit() {
        let rows = parse_calibration(CALIBRATION_DATA).unwrap();
        let by_parity = |k: &LRKey| (k.lambda.parity(), k.nu.parity(), k.mu.parity());
        let small: Vec<_> = rows.iter().filter(|r| r.key.mu.size() <= 4).cloned().collect();
        assert!(fit_exponents(&small, by_parity).is_ok());
        let err = fit_exponents(&rows, by_parity).unwrap_err();
        assert!(err.contains("(0, 0, 0)"), "{err}");
    }

    #[test]
    fn calibration_data_reproduced_by_oracle_through_degree_four() {
        let rows = parse_calibration(CALIBRATION_DATA).unwrap();
        for row in rows.iter().filter(|r| r.key.mu.size() <= 4) {
            let k = &row.key;
            let x = singular_mult(&k.lambda, &k.nu, &k.mu, 6).unwrap();
            assert_eq!(BigInt::from(x), row.oracle_total, "{k:?}");
        }
    }

    #[test]
    fn log2_ratios() {
        assert_eq!(log2_ratio(&BigInt::from(8), &BigInt::from(2)), Some(2));
        assert_eq!(log2_ratio(&BigInt::from(2), &BigInt::from(4)), Some(-1));
        assert_eq!(log2_ratio(&BigInt::from(3), &BigInt::from(2)), None);
        assert_eq!(log2_ratio(&BigInt::from(0), &BigInt::from(2)), None);
    }
}
