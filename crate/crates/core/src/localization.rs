//! Central localizations `S(z)` of M, N1 and N2, obtained by adjoining an
//! inverse of z = `cba`, and the splitting `M(z) ≅ M' × Z`.
//!
//! An element is stored as `reduced · z^exp` with `reduced` not divisible
//! by z; cancellativity of z makes this pair canonical.
//!
//! The splitting sends `v · z^m` to `(v̄, m + occ_a(v))`, where `v̄` is the
//! image of `v` in `M' = M/(z=1)`. Every M-relation and z itself contain the
//! same number of a's on both sides, which is what makes the second
//! coordinate additive.
//!
//! In the identity-transfer argument each value is written `d^r · p`, and a
//! side evaluates to `d^N · w(p_1, ..., p_k)` with `N = Σ r_i · occ(x_i, w)`;
//! the exponent is a plain sum of products, which is the form used here.

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::presentations::{MonoidHandle, Presentation};
use crate::report::Report;
use crate::words::{Letter, Word};

/// `reduced · z^exp` in the central localization of `base`.
#[derive(Clone)]
pub struct LocalizedElement {
    base: Arc<MonoidHandle>,
    reduced: Word,
    exp: i64,
}

impl fmt::Debug for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.base.name())
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·z^{}", self.reduced, self.exp)
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        self.base.name() == other.base.name() && self.reduced == other.reduced && self.exp == other.exp
    }
}

impl Eq for LocalizedElement {}

impl std::hash::Hash for LocalizedElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.reduced.hash(state);
        self.exp.hash(state);
    }
}

fn require_localizable(base: &MonoidHandle) -> Result<()> {
    if !base.preserves_length() || base.alphabet().size() != 3 {
        return Err(Error::Domain(format!("{} has no central localization at z = cba", base.name())));
    }
    Ok(())
}

impl LocalizedElement {
    /// The element `word · z^exp`; factors of z inside `word` are moved into
    /// the exponent.
    pub fn new(base: &Arc<MonoidHandle>, word: &Word, exp: i64) -> Result<LocalizedElement> {
        require_localizable(base)?;
        let (reduced, k) = base.z_valuation(word)?;
        Ok(LocalizedElement { base: Arc::clone(base), reduced, exp: exp + k as i64 })
    }

    pub fn one(base: &Arc<MonoidHandle>) -> Result<LocalizedElement> {
        LocalizedElement::new(base, &Word::empty(), 0)
    }

    /// `z^exp`.
    pub fn z_power(base: &Arc<MonoidHandle>, exp: i64) -> Result<LocalizedElement> {
        LocalizedElement::new(base, &Word::empty(), exp)
    }

    /// Parses `v·z^m` (also `v*z^m`, or a bare word meaning `m = 0`).
    pub fn parse(base: &Arc<MonoidHandle>, text: &str) -> Result<LocalizedElement> {
        let text = text.trim();
        let split = text.split_once("·z^").or_else(|| text.split_once("*z^"));
        let (word, exp) = match split {
            Some((v, m)) => {
                let m: i64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
                (v, m)
            }
            None => (text, 0),
        };
        LocalizedElement::new(base, &word.parse()?, exp)
    }

    pub fn base(&self) -> &Arc<MonoidHandle> {
        &self.base
    }

    pub fn reduced(&self) -> &Word {
        &self.reduced
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    fn same_base(&self, other: &LocalizedElement) -> Result<()> {
        if self.base.name() != other.base.name() {
            return Err(Error::Domain(format!(
                "elements of {}(z) and {}(z) cannot be combined",
                self.base.name(),
                other.base.name()
            )));
        }
        Ok(())
    }

    /// Product: multiply the reduced parts, then move the new z factors that
    /// appear at the junction into the exponent.
    pub fn mul(&self, other: &LocalizedElement) -> Result<LocalizedElement> {
        self.same_base(other)?;
        let (reduced, k) = self.base.z_valuation(&self.reduced.concat(&other.reduced))?;
        Ok(LocalizedElement { base: Arc::clone(&self.base), reduced, exp: self.exp + other.exp + k as i64 })
    }

    /// Equality in the localization.
    pub fn localized_equal(&self, other: &LocalizedElement) -> Result<bool> {
        self.same_base(other)?;
        Ok(self.exp == other.exp && self.base.equal(&self.reduced, &other.reduced)?)
    }

    /// `reduced · z^exp` with `exp >= 0`, written as a word of the base monoid.
    pub fn to_base_word(&self) -> Option<Word> {
        let exp = usize::try_from(self.exp).ok()?;
        Some(self.reduced.concat(&crate::plactic::z_word().pow(exp)))
    }
}

/// Whether `u·z^m = v·z^n` in the localization of `base`, for arbitrary
/// words `u`, `v`: the smaller power is cancelled and the rest compared in
/// the base.
pub fn fraction_equal(base: &MonoidHandle, u: &Word, m: i64, v: &Word, n: i64) -> Result<bool> {
    require_localizable(base)?;
    let z = crate::plactic::z_word();
    let shift = (m - n).unsigned_abs() as usize;
    if m >= n {
        base.equal(&u.concat(&z.pow(shift)), v)
    } else {
        base.equal(u, &v.concat(&z.pow(shift)))
    }
}

/// Loc-multiplication as a free function.
pub fn loc_mul(x: &LocalizedElement, y: &LocalizedElement) -> Result<LocalizedElement> {
    x.mul(y)
}

/// Element of `M' × Z`: `bar_v` is the z-free canonical word of M that
/// represents the M'-component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitPair {
    pub bar_v: Word,
    pub t: i64,
}

impl fmt::Display for SplitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.bar_v, self.t)
    }
}

impl SplitPair {
    /// Componentwise product; the first component is multiplied in `m_prime`.
    pub fn mul(&self, other: &SplitPair, m_prime: &MonoidHandle) -> Result<SplitPair> {
        Ok(SplitPair { bar_v: m_prime.canonical(&self.bar_v.concat(&other.bar_v))?, t: self.t + other.t })
    }

    /// Componentwise equality, the first component compared in `m_prime`.
    pub fn equal(&self, other: &SplitPair, m_prime: &MonoidHandle) -> Result<bool> {
        Ok(self.t == other.t && m_prime.equal(&self.bar_v, &other.bar_v)?)
    }
}

fn require_plactic(base: &MonoidHandle) -> Result<()> {
    if base.presentation().relations != Presentation::plactic().relations {
        return Err(Error::Domain(format!("the splitting is defined on M(z), not on {}(z)", base.name())));
    }
    Ok(())
}

/// `v·z^m ↦ (v̄, m + occ_a(v))`.
pub fn delta(x: &LocalizedElement) -> Result<SplitPair> {
    require_plactic(&x.base)?;
    Ok(SplitPair { bar_v: x.reduced.clone(), t: x.exp + x.reduced.occ(Letter::A) as i64 })
}

/// `(v̄, t) ↦ v·z^(t - occ_a(v))`, for the unique z-free preimage `v` of `v̄`.
pub fn delta_inverse(m: &Arc<MonoidHandle>, p: &SplitPair) -> Result<LocalizedElement> {
    require_plactic(m)?;
    let (v, k) = m.z_valuation(&p.bar_v)?;
    if k != 0 {
        return Err(Error::Domain(format!("{} is divisible by z; not a z-free representative", p.bar_v)));
    }
    let exp = p.t - v.occ(Letter::A) as i64;
    Ok(LocalizedElement { base: Arc::clone(m), exp, reduced: v })
}

/// All elements `v·z^m` with `v` z-free canonical of length at most
/// `max_reduced_len` and `m` in `exps`.
pub fn grid(
    base: &Arc<MonoidHandle>,
    max_reduced_len: usize,
    exps: RangeInclusive<i64>,
) -> Result<Vec<LocalizedElement>> {
    require_localizable(base)?;
    let mut out = Vec::new();
    for v in base.elements_up_to(max_reduced_len)? {
        if base.divisible_by_z(&v)? {
            continue;
        }
        for m in exps.clone() {
            out.push(LocalizedElement { base: Arc::clone(base), reduced: v.clone(), exp: m });
        }
    }
    Ok(out)
}

fn range_param(exps: &RangeInclusive<i64>) -> Vec<i64> {
    vec![*exps.start(), *exps.end()]
}

/// Checks `δ(x·y) = δ(x)·δ(y)` over the grid. With `sample_size = Some(n)`
/// only `n` pseudo-random pairs (fixed seed) are checked.
pub fn verify_delta_homomorphism(
    m: &Arc<MonoidHandle>,
    m_prime: &MonoidHandle,
    max_reduced_len: usize,
    exps: RangeInclusive<i64>,
    sample_size: Option<usize>,
) -> Report {
    let started = Instant::now();
    let mut report = Report::new("delta-homomorphism", max_reduced_len as u64)
        .param("exp", range_param(&exps))
        .param("sample_size", sample_size.map(|n| n as u64));
    let cells = match grid(m, max_reduced_len, exps) {
        Ok(g) => g,
        Err(e) => {
            report.error(e.to_string());
            return report.finish(started);
        }
    };
    let pairs: Vec<(usize, usize)> = match sample_size {
        None => (0..cells.len()).flat_map(|i| (0..cells.len()).map(move |j| (i, j))).collect(),
        Some(n) => {
            let mut all: Vec<(usize, usize)> =
                (0..cells.len()).flat_map(|i| (0..cells.len()).map(move |j| (i, j))).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            all.shuffle(&mut rng);
            all.truncate(n);
            all.sort_unstable();
            all
        }
    };
    for (i, j) in pairs {
        let (x, y) = (&cells[i], &cells[j]);
        report.checked += 1;
        let outcome = (|| -> Result<Option<String>> {
            let left = delta(&x.mul(y)?)?;
            let right = delta(x)?.mul(&delta(y)?, m_prime)?;
            Ok((!left.equal(&right, m_prime)?).then(|| format!("δ(xy) = {left} but δ(x)δ(y) = {right}")))
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(detail)) => report.violation(format!("{x} · {y}"), detail),
            Err(e) => report.error(format!("{x} · {y}: {e}")),
        }
    }
    report.finish(started)
}

/// Checks that δ is injective on the grid and that `δ⁻¹ ∘ δ` is the identity.
pub fn verify_delta_bijection(m: &Arc<MonoidHandle>, max_reduced_len: usize, exps: RangeInclusive<i64>) -> Report {
    let started = Instant::now();
    let mut report = Report::new("delta-bijection", max_reduced_len as u64).param("exp", range_param(&exps));
    let cells = match grid(m, max_reduced_len, exps) {
        Ok(g) => g,
        Err(e) => {
            report.error(e.to_string());
            return report.finish(started);
        }
    };
    let mut images = HashSet::new();
    for x in &cells {
        report.checked += 1;
        let outcome = delta(x).and_then(|p| Ok((delta_inverse(m, &p)?, p)));
        match outcome {
            Ok((back, p)) => {
                if !images.insert(p.clone()) {
                    report.violation(x.to_string(), format!("δ image {p} already hit"));
                }
                if back != *x {
                    report.violation(x.to_string(), format!("δ⁻¹(δ(x)) = {back}"));
                }
            }
            Err(e) => report.error(format!("{x}: {e}")),
        }
    }
    report.finish(started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Catalog;
    use crate::words::w;

    fn el(base: &Arc<MonoidHandle>, s: &str) -> LocalizedElement {
        LocalizedElement::parse(base, s).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let c = Catalog::builtin();
        let m = &c.m;
        let p = el(m, "c·z^0").mul(&el(m, "ba·z^0")).unwrap();
        assert_eq!((p.reduced().clone(), p.exp()), (Word::empty(), 1));
        let p = el(m, "ba·z^0").mul(&el(m, "c·z^0")).unwrap();
        assert_eq!((p.reduced().clone(), p.exp()), (m.canonical(&w("bac")).unwrap(), 0));
        let x = el(m, "ab·z^-3");
        assert_eq!(x.mul(&LocalizedElement::one(m).unwrap()).unwrap(), x);
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let c = Catalog::builtin();
        let x = el(&c.m, "a·z^0");
        let y = el(&c.n1, "a·z^0");
        assert!(matches!(x.mul(&y), Err(Error::Domain(_))));
        assert!(matches!(x.localized_equal(&y), Err(Error::Domain(_))));
        assert!(LocalizedElement::one(&c.m_prime).is_err());
    }

    #[test]
    fn delta_examples() {
        let c = Catalog::builtin();
        let m = &c.m;
        assert_eq!(delta(&el(m, "1·z^1")).unwrap(), SplitPair { bar_v: Word::empty(), t: 1 });
        assert_eq!(delta(&el(m, "a·z^0")).unwrap(), SplitPair { bar_v: w("a"), t: 1 });
        assert_eq!(delta(&el(m, "ba·z^-2")).unwrap(), SplitPair { bar_v: w("ba"), t: -1 });
        assert!(delta(&el(&c.n1, "a·z^0")).is_err());
        assert_eq!(delta(&LocalizedElement::one(m).unwrap()).unwrap(), SplitPair { bar_v: Word::empty(), t: 0 });
    }

    #[test]
    fn delta_inverse_examples() {
        let c = Catalog::builtin();
        let m = &c.m;
        let inv = |s: &str, t| delta_inverse(m, &SplitPair { bar_v: w(s), t }).unwrap().to_string();
        assert_eq!(inv("", 0), "1·z^0");
        assert_eq!(inv("a", 1), "a·z^0");
        assert_eq!(inv("ba", -1), "ba·z^-2");
        assert!(delta_inverse(m, &SplitPair { bar_v: w("cba"), t: 0 }).is_err());
    }

    #[test]
    fn z_and_its_inverse_cancel() {
        let c = Catalog::builtin();
        let m = &c.m;
        let z = LocalizedElement::z_power(m, 1).unwrap();
        let zi = LocalizedElement::z_power(m, -1).unwrap();
        let one = z.mul(&zi).unwrap();
        assert!(one.localized_equal(&LocalizedElement::one(m).unwrap()).unwrap());
        let sum = delta(&z).unwrap().mul(&delta(&zi).unwrap(), &c.m_prime).unwrap();
        assert_eq!(sum, SplitPair { bar_v: Word::empty(), t: 0 });
        let a = el(m, "a·z^0");
        let aa = delta(&a.mul(&a).unwrap()).unwrap();
        assert_eq!(aa, delta(&a).unwrap().mul(&delta(&a).unwrap(), &c.m_prime).unwrap());
        assert_eq!(aa, SplitPair { bar_v: w("aa"), t: 2 });
    }

    #[test]
    fn equality_examples() {
        let c = Catalog::builtin();
        let m = &c.m;
        assert!(el(m, "ab·z^1").localized_equal(&el(m, "ab·z^1")).unwrap());
        assert!(!el(m, "1·z^1").localized_equal(&el(m, "1·z^0")).unwrap());
        assert!(el(m, "bac").localized_equal(&el(m, "bca")).unwrap());
    }

    #[test]
    fn parse_and_display() {
        let c = Catalog::builtin();
        let m = &c.m;
        assert_eq!(el(m, "ba·z^-2").to_string(), "ba·z^-2");
        assert_eq!(el(m, "1·z^0").to_string(), "1·z^0");
        assert_eq!(el(m, "cbaab*z^1").to_string(), "ab·z^2");
        assert!(LocalizedElement::parse(m, "ab·z^x").is_err());
    }

    #[test]
    fn small_grids_pass() {
        let c = Catalog::builtin();
        assert!(verify_delta_homomorphism(&c.m, &c.m_prime, 2, -1..=1, None).passed());
        assert!(verify_delta_homomorphism(&c.m, &c.m_prime, 3, -2..=2, Some(500)).passed());
        assert!(verify_delta_bijection(&c.m, 3, -2..=2).passed());
        let empty = verify_delta_bijection(&c.m, 0, RangeInclusive::new(1, 0));
        assert!(empty.passed() && empty.checked == 0);
        let single = grid(&c.m, 0, 0..=0).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(delta(&single[0]).unwrap(), SplitPair { bar_v: Word::empty(), t: 0 });
    }

    #[test]
    fn localization_of_quotients() {
        let c = Catalog::builtin();
        for base in [&c.n1, &c.n2] {
            let cells = grid(base, 2, -1..=1).unwrap();
            let z = LocalizedElement::z_power(base, 1).unwrap();
            for x in &cells {
                assert_eq!(z.mul(x).unwrap(), x.mul(&z).unwrap());
            }
            for x in cells.iter().step_by(3) {
                for y in cells.iter().step_by(2) {
                    for u in cells.iter().step_by(5) {
                        let l = x.mul(y).unwrap().mul(u).unwrap();
                        let r = x.mul(&y.mul(u).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn localization_properties_on_grid() {
        let c = Catalog::builtin();
        let m = &c.m;
        let cells = grid(m, 3, -2..=2).unwrap();
        let z = LocalizedElement::z_power(m, 1).unwrap();
        for x in &cells {
            assert_eq!(z.mul(x).unwrap(), x.mul(&z).unwrap());
            let d = delta(x).unwrap();
            assert_eq!(d.t, x.exp() + x.reduced().occ(Letter::A) as i64);
            let next = LocalizedElement::new(m, x.reduced(), x.exp() + 1).unwrap();
            let dn = delta(&next).unwrap();
            assert_eq!((dn.bar_v, dn.t), (d.bar_v, d.t + 1));
        }
        for x in &cells {
            for y in &cells {
                for u in cells.iter().step_by(7) {
                    let l = x.mul(y).unwrap().mul(u).unwrap();
                    let r = x.mul(&y.mul(u).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn plactic_embeds_in_its_localization() {
        let c = Catalog::builtin();
        let m = &c.m;
        let free: Vec<Word> = m.alphabet().words_up_to(5).filter(|u| !m.divisible_by_z(u).unwrap()).collect();
        for u in free.iter().step_by(3) {
            for v in free.iter().step_by(2) {
                let lu = LocalizedElement::new(m, u, 0).unwrap();
                let lv = LocalizedElement::new(m, v, 0).unwrap();
                assert_eq!(lu.localized_equal(&lv).unwrap(), m.equal(u, v).unwrap());
            }
        }
    }
}
