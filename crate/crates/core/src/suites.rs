//! Named verification suites: each bundles a few bounded checks into one
//! [`SuiteReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::identities::{
    enumerate_identities, equivalence_escalation_check, holds_at_bound, localization_lemma_check,
    quotient_direction_check, unbalanced_check,
};
use crate::localization::{delta, verify_delta_bijection, verify_delta_homomorphism, LocalizedElement};
use crate::plactic::z_word;
use crate::presentations::{
    agreement_check, center_check, commutation_check, defining_relations_check, subdirect_check, z_cancellation_check,
    z_one_quotient_check, Catalog, MonoidHandle,
};
use crate::report::{Report, SuiteReport};
use crate::words::{Identity, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    LemmaZ,
    Center,
    Subdirect,
    Delta,
    Equivalence,
    LocalizationLemma,
    QuotientDirection,
    Oracle,
    Relations,
    Unbalanced,
    MPrime,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::LemmaZ,
        Suite::Center,
        Suite::Subdirect,
        Suite::Delta,
        Suite::Equivalence,
        Suite::LocalizationLemma,
        Suite::QuotientDirection,
        Suite::Oracle,
        Suite::Relations,
        Suite::Unbalanced,
        Suite::MPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaZ => "lemma-z",
            Suite::Center => "center",
            Suite::Subdirect => "subdirect",
            Suite::Delta => "delta",
            Suite::Equivalence => "equivalence",
            Suite::LocalizationLemma => "localization-lemma",
            Suite::QuotientDirection => "quotient-direction",
            Suite::Oracle => "oracle",
            Suite::Relations => "relations",
            Suite::Unbalanced => "unbalanced",
            Suite::MPrime => "m-prime",
        }
    }

    /// Word length used when none is given.
    pub fn default_len(self) -> usize {
        match self {
            Suite::Delta => 4,
            Suite::LocalizationLemma => 2,
            _ => 6,
        }
    }

    /// Identity side length used when none is given.
    pub fn default_sides(self) -> usize {
        match self {
            Suite::LocalizationLemma => 9,
            Suite::Unbalanced => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let known: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Error::Parse(format!("unknown suite {s:?}; known suites: {}", known.join(", ")))
        })
    }
}

/// Bounds and selections of one suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Word length bound; the suite default when `None`.
    pub len: Option<usize>,
    /// Longest identity side; the suite default when `None`.
    pub sides: Option<usize>,
    /// Substitution length bound of identity searches.
    pub bound: usize,
    pub exps: RangeInclusive<i64>,
    pub escalate: usize,
    /// Number of surviving identities taken by the localization suite.
    pub count: usize,
    /// Random pairs of the δ homomorphism check; exhaustive when `None`.
    pub sample: Option<usize>,
    /// Monoids to run on; the suite default when empty.
    pub monoids: Vec<String>,
    pub strict: bool,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            len: None,
            sides: None,
            bound: 2,
            exps: -2..=2,
            escalate: 3,
            count: 20,
            sample: None,
            monoids: Vec::new(),
            strict: false,
        }
    }

    pub fn word_len(&self) -> usize {
        self.len.unwrap_or(self.suite.default_len())
    }

    pub fn sides(&self) -> usize {
        self.sides.unwrap_or(self.suite.default_sides())
    }

    fn validate(&self) -> Result<()> {
        if self.word_len() == 0 || self.sides() == 0 || self.bound == 0 || self.count == 0 {
            return Err(Error::Config("bounds must be positive".into()));
        }
        if self.exps.is_empty() {
            return Err(Error::Config(format!("empty exponent range {:?}", self.exps)));
        }
        Ok(())
    }

    fn parameters(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        p.insert("len".into(), Value::from(self.word_len() as u64));
        p.insert("sides".into(), Value::from(self.sides() as u64));
        p.insert("bound".into(), Value::from(self.bound as u64));
        p.insert("exp".into(), Value::from(vec![*self.exps.start(), *self.exps.end()]));
        p.insert("escalate".into(), Value::from(self.escalate as u64));
        p.insert("count".into(), Value::from(self.count as u64));
        p.insert("sample".into(), Value::from(self.sample.map(|n| n as u64)));
        p.insert("monoids".into(), Value::from(self.monoids.clone()));
        p.insert("strict".into(), Value::from(self.strict));
        p
    }

    fn handles(&self, catalog: &Catalog, default: &[&Arc<MonoidHandle>]) -> Result<Vec<Arc<MonoidHandle>>> {
        if self.monoids.is_empty() {
            return Ok(default.iter().map(|h| Arc::clone(h)).collect());
        }
        self.monoids
            .iter()
            .map(|name| catalog.get(name).ok_or_else(|| Error::Config(format!("unknown monoid {name:?}"))))
            .collect()
    }
}

/// The first `count` balanced two-variable identities with sides at most
/// `sides` that hold in `base` up to substitution length `bound`.
pub fn survivors(base: &MonoidHandle, sides: usize, bound: usize, count: usize) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for id in enumerate_identities(2, sides, true) {
        if out.len() == count {
            break;
        }
        if !holds_at_bound(base, &id, bound)?.fails() {
            out.push(id);
        }
    }
    Ok(out)
}

/// Runs the suite against `catalog`.
pub fn run_suite(catalog: &Catalog, config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let len = config.word_len();
    let z = z_word();
    let quotients = [&catalog.m, &catalog.n1, &catalog.n2];
    let checks: Vec<Report> = match config.suite {
        Suite::LemmaZ => {
            let mut out = Vec::new();
            for h in config.handles(catalog, &quotients)? {
                out.push(commutation_check(&h, &z, len));
                let cancel_len = if Arc::ptr_eq(&h, &catalog.m) { len.min(5) } else { len.min(4) };
                out.push(z_cancellation_check(&h, cancel_len));
            }
            out
        }
        Suite::Center => {
            let mut out = Vec::new();
            for h in config.handles(catalog, &[&catalog.m])? {
                let expected = (0..=len / 3).map(|k| h.canonical(&z.pow(k))).collect::<Result<Vec<Word>>>()?;
                out.push(center_check(&h, len, &expected));
            }
            out
        }
        Suite::Subdirect => vec![subdirect_check(&catalog.m, &catalog.n1, &catalog.n2, len)],
        Suite::Delta => {
            let mut round_trip = Report::new("delta-generator", 0);
            round_trip.checked = 1;
            let image = LocalizedElement::z_power(&catalog.m, 1).and_then(|e| delta(&e));
            match image {
                Ok(p) if p.bar_v.is_empty() && p.t == 1 => {}
                Ok(p) => round_trip.violation("z", format!("δ(z) = {p}, expected (1, 1)")),
                Err(e) => round_trip.error(e.to_string()),
            }
            vec![
                round_trip,
                verify_delta_homomorphism(&catalog.m, &catalog.m_prime, len, config.exps.clone(), config.sample),
                verify_delta_bijection(&catalog.m, len, config.exps.clone()),
            ]
        }
        Suite::Equivalence => {
            let ids = enumerate_identities(2, config.sides(), true);
            [&catalog.n1, &catalog.n2]
                .iter()
                .map(|n| equivalence_escalation_check(&catalog.m, n, &ids, config.bound, config.escalate))
                .collect()
        }
        Suite::QuotientDirection => {
            let ids = enumerate_identities(2, config.sides(), true);
            config
                .handles(catalog, &[&catalog.n1, &catalog.n2])?
                .iter()
                .map(|n| quotient_direction_check(&catalog.m, n, &ids, config.bound))
                .collect()
        }
        Suite::LocalizationLemma => {
            let mut out = Vec::new();
            for base in config.handles(catalog, &[&catalog.n1, &catalog.n2])? {
                for id in survivors(&base, config.sides(), config.bound, config.count)? {
                    out.push(localization_lemma_check(&base, &id, len, config.exps.clone())?);
                }
            }
            out
        }
        Suite::Oracle => {
            let mut out = vec![agreement_check(&catalog.m, &catalog.plactic_by_classes(), len)];
            for h in [&catalog.n1, &catalog.n2] {
                if h.has_class_key() {
                    out.push(agreement_check(h, &h.class_oracle()?, len));
                }
            }
            out
        }
        Suite::Relations => config
            .handles(catalog, &catalog.handles().iter().collect::<Vec<_>>())?
            .iter()
            .map(|h| defining_relations_check(h))
            .collect(),
        Suite::Unbalanced => {
            let ids = enumerate_identities(2, config.sides(), false);
            vec![unbalanced_check(&config.handles(catalog, &catalog.handles().iter().collect::<Vec<_>>())?, &ids)]
        }
        Suite::MPrime => vec![
            z_one_quotient_check(&catalog.m, &catalog.m_prime, len),
            z_one_quotient_check(&catalog.n1, &catalog.n1_prime, len),
            z_one_quotient_check(&catalog.n2, &catalog.n2_prime, len),
        ],
    };
    Ok(SuiteReport::new(config.suite.name(), config.parameters(), checks, config.strict))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("lemma".parse::<Suite>().is_err());
    }

    #[test]
    fn zero_bounds_are_rejected() {
        let mut config = SuiteConfig::new(Suite::Center);
        config.len = Some(0);
        assert!(run_suite(&Catalog::builtin(), &config).is_err());
        let mut config = SuiteConfig::new(Suite::Delta);
        config.exps = RangeInclusive::new(2, -2);
        assert!(run_suite(&Catalog::builtin(), &config).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let catalog = Catalog::builtin();
        for suite in
            [Suite::LemmaZ, Suite::Center, Suite::Subdirect, Suite::Relations, Suite::MPrime, Suite::Unbalanced]
        {
            let mut config = SuiteConfig::new(suite);
            config.len = Some(3);
            let report = run_suite(&catalog, &config).unwrap();
            assert!(report.passed, "{suite}: {}", report.to_json());
            assert!(report.check_count > 0);
        }
    }

    #[test]
    fn unknown_monoid_is_a_config_error() {
        let mut config = SuiteConfig::new(Suite::Relations);
        config.monoids = vec!["Q".into()];
        assert!(matches!(run_suite(&Catalog::builtin(), &config), Err(Error::Config(_))));
    }
}
