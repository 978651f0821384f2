//! Bounded satisfaction checking of monoid identities.
//!
//! A search at bound `L` substitutes, for every variable, every canonical
//! element of length at most `L`. Substitutions are enumerated in a fixed
//! order: variables in increasing order, the first variable most
//! significant, elements in length-then-lex order. The search runs in
//! parallel but always reports the least witness in that order.
//!
//! A bounded search can only refute an identity. When a theorem guarantees a
//! witness somewhere beyond the bound, a miss is a *finding*, not a failure.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::localization::{self, LocalizedElement};
use crate::presentations::MonoidHandle;
use crate::report::Report;
use crate::words::{shortlex, Identity, Letter, Substitution, Var, VarWord, Word};

pub const DEFAULT_MAX_SUBSTITUTIONS: u64 = 200_000_000;

/// Value of one side of an identity under a substitution, as a canonical word.
pub fn substitute(side: &VarWord, s: &Substitution, h: &MonoidHandle) -> Result<Word> {
    h.canonical(&s.apply(side)?)
}

/// Whether the substitution makes both sides equal in `h`.
pub fn satisfies(h: &MonoidHandle, id: &Identity, s: &Substitution) -> Result<bool> {
    h.equal(&s.apply(&id.lhs)?, &s.apply(&id.rhs)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    HoldsUpToBound,
    Fails,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::HoldsUpToBound => "holds-up-to-bound",
            Status::Fails => "fails",
        })
    }
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Substitution>,
    pub bound: usize,
}

impl Verdict {
    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.to_string(),
            "bound": self.bound,
            "witness": self.witness.as_ref().map(|s| {
                s.0.iter().map(|(v, w)| (v.to_string(), Value::from(w.to_string()))).collect::<serde_json::Map<_, _>>()
            }),
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(s) => write!(f, "fails at bound {} with {}", self.bound, s),
            None => write!(f, "holds up to bound {}", self.bound),
        }
    }
}

/// Searches every substitution of canonical elements of length at most
/// `bound` and returns the least counterexample, if any.
pub fn holds_at_bound(h: &MonoidHandle, id: &Identity, bound: usize) -> Result<Verdict> {
    holds_at_bound_capped(h, id, bound, DEFAULT_MAX_SUBSTITUTIONS)
}

pub fn holds_at_bound_capped(h: &MonoidHandle, id: &Identity, bound: usize, max_substitutions: u64) -> Result<Verdict> {
    let vars = id.variables();
    let elements = h.elements_up_to(bound)?;
    let total = (elements.len() as u64).checked_pow(vars.len() as u32).filter(|&t| t <= max_substitutions).ok_or(
        Error::CapExceeded {
            what: "substitutions per identity",
            limit: max_substitutions,
            observed: (elements.len() as f64).powi(vars.len() as i32).min(u64::MAX as f64) as u64,
        },
    )?;
    let radix = elements.len();
    let nth = |mut index: usize| -> Substitution {
        let mut values = vec![Word::empty(); vars.len()];
        for slot in values.iter_mut().rev() {
            *slot = elements[index % radix].clone();
            index /= radix;
        }
        vars.iter().copied().zip(values).collect()
    };
    let hit = (0..total as usize).into_par_iter().find_map_first(|i| {
        let s = nth(i);
        match satisfies(h, id, &s) {
            Ok(true) => None,
            Ok(false) => Some(Ok(s)),
            Err(e) => Some(Err(e)),
        }
    });
    match hit {
        None => Ok(Verdict { status: Status::HoldsUpToBound, witness: None, bound }),
        Some(Ok(s)) => Ok(Verdict { status: Status::Fails, witness: Some(s), bound }),
        Some(Err(e)) => Err(e),
    }
}

/// First counterexample at any bound in `bounds`, searching bound by bound.
pub fn first_failure_within(h: &MonoidHandle, id: &Identity, bounds: RangeInclusive<usize>) -> Result<Verdict> {
    let mut last = Verdict { status: Status::HoldsUpToBound, witness: None, bound: *bounds.start() };
    for b in bounds {
        last = holds_at_bound(h, id, b)?;
        if last.fails() {
            break;
        }
    }
    Ok(last)
}

/// For an unbalanced identity, sends every variable to `a` when the sides
/// have different lengths; otherwise sends the first variable whose counts
/// differ to `a` and the rest to 1. Either way the sides become different
/// powers of `a`, and `a` has infinite order in every catalog monoid (its
/// powers are never divisible by z).
pub fn unbalanced_counterexample(id: &Identity) -> Result<Substitution> {
    if id.is_balanced() {
        return Err(Error::Domain(format!("{id} is balanced")));
    }
    let vars = id.variables();
    if id.lhs.len() != id.rhs.len() {
        return Ok(vars.into_iter().map(|v| (v, Word(vec![Letter::A]))).collect());
    }
    let unequal = *vars
        .iter()
        .find(|&&v| id.lhs.occ(v) != id.rhs.occ(v))
        .expect("an unbalanced identity has a variable with unequal counts");
    Ok(vars.into_iter().map(|v| (v, if v == unequal { Word(vec![Letter::A]) } else { Word::empty() })).collect())
}

/// Renames variables by first occurrence in `lhs·rhs`.
fn rename_by_first_occurrence(id: &Identity) -> Identity {
    let mut order: Vec<Var> = Vec::new();
    for v in id.lhs.iter().chain(id.rhs.iter()) {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    id.renamed(|v| Var(order.iter().position(|&o| o == v).expect("seen") as u8))
}

fn side_order(a: &Identity, b: &Identity) -> std::cmp::Ordering {
    shortlex(&a.lhs, &b.lhs).then_with(|| shortlex(&a.rhs, &b.rhs))
}

/// Representative of an identity up to variable renaming and swapping sides:
/// rename by first occurrence in each orientation and keep the smaller
/// (length-then-lex, left side first).
pub fn canonical_identity(id: &Identity) -> Identity {
    let a = rename_by_first_occurrence(id);
    let b = rename_by_first_occurrence(&id.swapped());
    if side_order(&a, &b).is_le() {
        a
    } else {
        b
    }
}

/// All non-trivial identities with sides of length at most `max_len` over at
/// most `num_vars` variables, one per renaming/swap class, sorted.
pub fn enumerate_identities(num_vars: usize, max_len: usize, balanced_only: bool) -> Vec<Identity> {
    let mut sides: Vec<VarWord> = vec![Word::empty()];
    let mut layer: Vec<VarWord> = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| (0..num_vars as u8).map(move |v| w.concat(&Word(vec![Var(v)])))).collect();
        sides.extend(layer.iter().cloned());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, l) in sides.iter().enumerate() {
        for r in &sides[i + 1..] {
            let id = Identity::new(l.clone(), r.clone());
            if balanced_only && !id.is_balanced() {
                continue;
            }
            let key = canonical_identity(&id);
            if seen.insert(key.clone()) {
                out.push(key);
            }
        }
    }
    out.sort_by(side_order);
    out
}

/// One cell of a comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Verdict(Verdict),
    Error(String),
}

impl Cell {
    fn status(&self) -> Option<Status> {
        match self {
            Cell::Verdict(v) => Some(v.status),
            Cell::Error(_) => None,
        }
    }

    fn short(&self) -> String {
        match self {
            Cell::Verdict(v) if v.fails() => {
                format!("fails [{}]", v.witness.as_ref().expect("failing verdicts carry a witness"))
            }
            Cell::Verdict(_) => "holds".to_string(),
            Cell::Error(e) => format!("error: {e}"),
        }
    }
}

/// Verdicts of one identity across several monoids.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub identity: Identity,
    pub cells: Vec<(String, Cell)>,
    /// All cells have the same status (and none errored).
    pub agreement: bool,
    /// Some monoid holds while one of its quotients fails: impossible, so a bug.
    pub quotient_violation: bool,
}

impl ComparisonRow {
    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity.to_string(),
            "agreement": self.agreement,
            "quotient_violation": self.quotient_violation,
            "verdicts": self.cells.iter().map(|(name, cell)| {
                let v = match cell {
                    Cell::Verdict(v) => v.to_json(),
                    Cell::Error(e) => json!({ "error": e }),
                };
                (name.clone(), v)
            }).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// Bounded verdict of every identity in every monoid.
pub fn compare_monoids(handles: &[Arc<MonoidHandle>], ids: &[Identity], bound: usize) -> Vec<ComparisonRow> {
    ids.iter()
        .map(|id| {
            let cells: Vec<(String, Cell)> = handles
                .iter()
                .map(|h| {
                    let cell = match holds_at_bound(h, id, bound) {
                        Ok(v) => Cell::Verdict(v),
                        Err(e) => Cell::Error(e.to_string()),
                    };
                    (h.name().to_string(), cell)
                })
                .collect();
            let statuses: Vec<Option<Status>> = cells.iter().map(|(_, c)| c.status()).collect();
            let agreement = statuses.iter().all(|s| s.is_some() && *s == statuses[0]);
            let mut quotient_violation = false;
            for (i, base) in handles.iter().enumerate() {
                for (j, quot) in handles.iter().enumerate() {
                    if i != j
                        && quot.is_quotient_of(base)
                        && statuses[i] == Some(Status::HoldsUpToBound)
                        && statuses[j] == Some(Status::Fails)
                    {
                        quotient_violation = true;
                    }
                }
            }
            ComparisonRow { identity: id.clone(), cells, agreement, quotient_violation }
        })
        .collect()
}

/// Aligned text rendering of a comparison table.
pub fn render_table(rows: &[ComparisonRow]) -> String {
    let Some(first) = rows.first() else {
        return String::from("(no identities)\n");
    };
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["identity".to_string()];
    header.extend(first.cells.iter().map(|(n, _)| n.clone()));
    header.push("agree".to_string());
    table.push(header);
    for row in rows {
        let mut line = vec![row.identity.to_string()];
        line.extend(row.cells.iter().map(|(_, c)| c.short()));
        line.push(if row.quotient_violation {
            "VIOLATION".to_string()
        } else if row.agreement {
            "yes".to_string()
        } else {
            "no".to_string()
        });
        table.push(line);
    }
    let widths: Vec<usize> =
        (0..table[0].len()).map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for line in table {
        let cells: Vec<String> =
            line.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Every unbalanced identity fails in every monoid under
/// [`unbalanced_counterexample`].
pub fn unbalanced_check(handles: &[Arc<MonoidHandle>], ids: &[Identity]) -> Report {
    let started = Instant::now();
    let mut report = Report::new("unbalanced", 0)
        .param("monoids", handles.iter().map(|h| h.name().to_string()).collect::<Vec<_>>())
        .param("identities", ids.len() as u64);
    for id in ids.iter().filter(|id| !id.is_balanced()) {
        let s = unbalanced_counterexample(id).expect("filtered to unbalanced");
        for h in handles {
            report.checked += 1;
            match satisfies(h, id, &s) {
                Ok(false) => {}
                Ok(true) => report.violation(
                    format!("{id} in {}", h.name()),
                    "the power-of-a substitution does not separate the sides",
                ),
                Err(e) => report.error(format!("{id} in {}: {e}", h.name())),
            }
        }
    }
    report.finish(started)
}

/// Every counterexample found in `quot` replays as a counterexample in `base`.
pub fn quotient_direction_check(base: &MonoidHandle, quot: &MonoidHandle, ids: &[Identity], bound: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new("quotient-direction", bound as u64)
        .param("base", base.name())
        .param("quotient", quot.name())
        .param("identities", ids.len() as u64);
    if !quot.is_quotient_of(base) {
        report.error(format!("{} is not a quotient of {}", quot.name(), base.name()));
        return report.finish(started);
    }
    for id in ids {
        report.checked += 1;
        let verdict = match holds_at_bound(quot, id, bound) {
            Ok(v) => v,
            Err(e) => {
                report.error(format!("{id} in {}: {e}", quot.name()));
                continue;
            }
        };
        let Some(s) = verdict.witness else { continue };
        match satisfies(base, id, &s) {
            Ok(false) => {}
            Ok(true) => report.violation(
                id.to_string(),
                format!("{s} separates the sides in {} but not in {}", quot.name(), base.name()),
            ),
            Err(e) => report.error(format!("{id} replay in {}: {e}", base.name())),
        }
    }
    report.finish(started)
}

/// For every identity failing in `a` at `bound`, looks for a counterexample
/// in `b` at bounds `bound..=bound + escalate`. Misses are findings.
pub fn equivalence_escalation_check(
    a: &MonoidHandle,
    b: &MonoidHandle,
    ids: &[Identity],
    bound: usize,
    escalate: usize,
) -> Report {
    let started = Instant::now();
    let mut report = Report::new("equivalence-escalation", bound as u64)
        .param("from", a.name())
        .param("to", b.name())
        .param("escalate", escalate as u64)
        .param("identities", ids.len() as u64);
    let mut matched = 0u64;
    for id in ids {
        let failing = match holds_at_bound(a, id, bound) {
            Ok(v) => v.fails(),
            Err(e) => {
                report.error(format!("{id} in {}: {e}", a.name()));
                continue;
            }
        };
        if !failing {
            continue;
        }
        report.checked += 1;
        match first_failure_within(b, id, bound..=bound + escalate) {
            Ok(v) if v.fails() => matched += 1,
            Ok(_) => report.finding(
                id.to_string(),
                format!(
                    "fails in {} at bound {bound}; no counterexample in {} up to bound {}",
                    a.name(),
                    b.name(),
                    bound + escalate
                ),
            ),
            Err(e) => report.error(format!("{id} in {}: {e}", b.name())),
        }
    }
    report.parameters.insert("matched".into(), matched.into());
    report.finish(started)
}

/// Value of a side of an identity in the central localization.
pub fn evaluate_localized(
    base: &Arc<MonoidHandle>,
    side: &VarWord,
    values: &[(Var, LocalizedElement)],
) -> Result<LocalizedElement> {
    let mut acc = LocalizedElement::one(base)?;
    for var in side.iter() {
        let value = values
            .iter()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::Domain(format!("no value for variable {var}")))?;
        acc = acc.mul(value)?;
    }
    Ok(acc)
}

/// A balanced identity that survives the bounded search in `base` is checked
/// in the localization over `(v, m)` with `|v| <= word_len`, `m` in `exps`.
///
/// Since z is central, a side evaluates to the product of the reduced parts
/// times z to the sum of the exponents, so each tuple of reduced parts is
/// compared in the base once and reused for every choice of exponents.
pub fn localization_lemma_check(
    base: &Arc<MonoidHandle>,
    id: &Identity,
    word_len: usize,
    exps: RangeInclusive<i64>,
) -> Result<Report> {
    if !id.is_balanced() {
        return Err(Error::Domain(format!("{id} is not balanced")));
    }
    let started = Instant::now();
    let mut report = Report::new("localization-lemma", word_len as u64)
        .param("monoid", base.name())
        .param("identity", id.to_string())
        .param("exp", vec![*exps.start(), *exps.end()]);
    let base_verdict = holds_at_bound(base, id, word_len)?;
    if let Some(s) = base_verdict.witness {
        report.note(format!("counterexample in {} found first: {s}", base.name()));
        return Ok(report.finish(started));
    }
    if base.strategy() != crate::presentations::Strategy::Schensted {
        report.note(format!("cancellation of z in {} is assumed; it is checked up to a bound only", base.name()));
    }
    let reduced: Vec<Word> = localization::grid(base, word_len, 0..=0)?.iter().map(|e| e.reduced().clone()).collect();
    let powers: Vec<i64> = exps.collect();
    let vars = id.variables();
    let k = vars.len() as u32;
    let evaluate = |side: &VarWord, picks: &[usize]| -> Word {
        let mut out = Word::empty();
        for var in side.iter() {
            let slot = vars.iter().position(|&v| v == var).expect("side variables are identity variables");
            out = out.concat(&reduced[picks[slot]]);
        }
        out
    };
    let digits = |mut index: usize, radix: usize| -> Vec<usize> {
        let mut out = vec![0; k as usize];
        for slot in out.iter_mut().rev() {
            *slot = index % radix;
            index /= radix;
        }
        out
    };
    let base_equal: Vec<Result<bool>> = (0..reduced.len().pow(k))
        .into_par_iter()
        .map(|i| {
            let picks = digits(i, reduced.len());
            base.equal(&evaluate(&id.lhs, &picks), &evaluate(&id.rhs, &picks))
        })
        .collect();
    let radix = reduced.len() * powers.len();
    let total = radix.pow(k);
    report.checked = total as u64;
    for index in 0..total {
        let cells = digits(index, radix);
        let picks: Vec<usize> = cells.iter().map(|c| c / powers.len()).collect();
        let exponent = |side: &VarWord| -> i64 {
            side.iter()
                .map(|var| powers[cells[vars.iter().position(|&v| v == var).expect("known variable")] % powers.len()])
                .sum()
        };
        let (el, er) = (exponent(&id.lhs), exponent(&id.rhs));
        let mut flat = 0;
        for &p in &picks {
            flat = flat * reduced.len() + p;
        }
        let same = match &base_equal[flat] {
            Ok(same) if el == er => *same,
            Ok(_) => {
                localization::fraction_equal(base, &evaluate(&id.lhs, &picks), el, &evaluate(&id.rhs, &picks), er)?
            }
            Err(e) => {
                report.error(e.to_string());
                break;
            }
        };
        if !same {
            let shown: Vec<String> = vars
                .iter()
                .zip(&cells)
                .map(|(v, c)| format!("{v}->{}·z^{}", reduced[c / powers.len()], powers[c % powers.len()]))
                .collect();
            let (l, r) = (evaluate(&id.lhs, &picks), evaluate(&id.rhs, &picks));
            report.violation(shown.join(", "), format!("{l}·z^{el} != {r}·z^{er}"));
            break;
        }
    }
    Ok(report.finish(started))
}
