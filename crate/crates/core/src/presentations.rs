//! Finitely presented monoids over a small ordered alphabet.
//!
//! Three equality strategies are available:
//!
//! * `Schensted`: tableau normal forms, only for the plactic monoid itself;
//! * `ClassBfs`: breadth-first enumeration of the congruence class of a word
//!   under a length-preserving relation set, with the lexicographically least
//!   member as canonical word. For N1 and N2 equality and divisibility by z
//!   are read off an exact class key instead (see `quotients`); classes are
//!   then only enumerated for canonical words;
//! * `StripZOverBase`: the quotient of a base monoid by `cba = 1`, decided by
//!   removing all factors z = `cba` in the base and comparing what remains.
//!
//! A word `w` is divisible by z in a length-preserving monoid exactly when
//! some member of its class starts with `cba`: if `w = z·u` then the word
//! `cba·u'` (for any representative `u'` of `u`) lies in the class of `w`,
//! and conversely. Centrality of z makes left and right divisibility agree.
//! Repeated stripping is only well defined because z is cancellable; for N1
//! and N2 that cancellation property is checked up to a bound, not proved.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plactic;
use crate::quotients::Kind;
use crate::report::Report;
use crate::words::{shortlex, w, Alphabet, Letter, Symbol, Word};

pub const DEFAULT_MAX_WORD_LEN: usize = 10;
pub const DEFAULT_MAX_CLASS_SIZE: usize = 1_000_000;
/// Environment variable overriding the class-size cap.
pub const MAX_CLASS_ENV: &str = "PLACTIC_MAX_CLASS";

const CACHE_LIMIT: usize = 8_000_000;

/// Resource caps of the class enumeration. Exceeding one is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_word_len: usize,
    pub max_class_size: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { max_word_len: DEFAULT_MAX_WORD_LEN, max_class_size: DEFAULT_MAX_CLASS_SIZE }
    }
}

impl Caps {
    /// Defaults, with the class-size cap taken from `PLACTIC_MAX_CLASS` when set.
    pub fn from_env() -> Result<Caps> {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var(MAX_CLASS_ENV) {
            caps.max_class_size = raw
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{MAX_CLASS_ENV}={raw:?} is not a positive integer")))?;
        }
        Ok(caps)
    }
}

/// Generators plus defining relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub relations: Vec<(Word, Word)>,
}

/// On-disk form of a presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationConfig {
    pub name: String,
    pub alphabet: usize,
    pub relations: Vec<[String; 2]>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, relations: Vec<(Word, Word)>) -> Result<Presentation> {
        for (l, r) in &relations {
            alphabet.check(l)?;
            alphabet.check(r)?;
        }
        Ok(Presentation { name: name.into(), alphabet, relations })
    }

    /// The eight Knuth relations on `a < b < c`.
    pub fn plactic() -> Presentation {
        let rels = [
            ("aba", "baa"),
            ("bab", "bba"),
            ("aca", "caa"),
            ("cac", "cca"),
            ("cbb", "bcb"),
            ("cbc", "ccb"),
            ("bac", "bca"),
            ("acb", "cab"),
        ];
        Presentation {
            name: "M".into(),
            alphabet: Alphabet::new(3).expect("rank 3"),
            relations: rels.iter().map(|(l, r)| (w(l), w(r))).collect(),
        }
    }

    /// This presentation with one more relation.
    pub fn with_relation(&self, name: &str, lhs: Word, rhs: Word) -> Presentation {
        let mut relations = self.relations.clone();
        relations.push((lhs, rhs));
        Presentation { name: name.into(), alphabet: self.alphabet, relations }
    }

    pub fn is_length_preserving(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.len() == r.len())
    }

    pub fn is_balanced(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.content() == r.content())
    }

    /// Every relation of `other` is also a relation here, so this monoid is a
    /// quotient of `other`.
    pub fn extends(&self, other: &Presentation) -> bool {
        self.alphabet == other.alphabet
            && other
                .relations
                .iter()
                .all(|(l, r)| self.relations.iter().any(|(a, b)| (a == l && b == r) || (a == r && b == l)))
    }

    pub fn from_config(config: &PresentationConfig) -> Result<Presentation> {
        let alphabet = Alphabet::new(config.alphabet)?;
        let relations =
            config.relations.iter().map(|[l, r]| Ok((l.parse()?, r.parse()?))).collect::<Result<Vec<_>>>()?;
        Presentation::new(config.name.clone(), alphabet, relations)
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let config: PresentationConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Presentation::from_config(&config)
    }

    pub fn to_config(&self) -> PresentationConfig {
        PresentationConfig {
            name: self.name.clone(),
            alphabet: self.alphabet.size(),
            relations: self.relations.iter().map(|(l, r)| [l.to_string(), r.to_string()]).collect(),
        }
    }
}

/// All words of one length congruent to a seed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceClass {
    /// Sorted lexicographically; the first member is the canonical word.
    pub members: Vec<Word>,
}

impl CongruenceClass {
    pub fn canon(&self) -> &Word {
        &self.members[0]
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Closes `{w}` under applying every relation, in both directions, at every position.
pub fn congruence_class(p: &Presentation, w: &Word, caps: &Caps) -> Result<CongruenceClass> {
    if !p.is_length_preserving() {
        return Err(Error::Strategy(format!(
            "class enumeration needs a length-preserving presentation; {} is not",
            p.name
        )));
    }
    p.alphabet.check(w)?;
    if w.len() > caps.max_word_len {
        return Err(Error::CapExceeded {
            what: "word length for class enumeration",
            limit: caps.max_word_len as u64,
            observed: w.len() as u64,
        });
    }
    let rules: Vec<(&[Letter], &[Letter])> = p
        .relations
        .iter()
        .filter(|(l, r)| l != r)
        .flat_map(|(l, r)| [(l.as_slice(), r.as_slice()), (r.as_slice(), l.as_slice())])
        .collect();

    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    seen.insert(w.0.clone());
    let mut frontier = vec![w.0.clone()];
    while let Some(cur) = frontier.pop() {
        for (from, to) in &rules {
            if from.len() > cur.len() {
                continue;
            }
            for pos in 0..=cur.len() - from.len() {
                if &cur[pos..pos + from.len()] == *from {
                    let mut next = cur.clone();
                    next[pos..pos + from.len()].copy_from_slice(to);
                    if seen.insert(next.clone()) {
                        if seen.len() > caps.max_class_size {
                            return Err(Error::CapExceeded {
                                what: "congruence class size",
                                limit: caps.max_class_size as u64,
                                observed: seen.len() as u64,
                            });
                        }
                        frontier.push(next);
                    }
                }
            }
        }
    }
    let mut members: Vec<Word> = seen.into_iter().map(Word).collect();
    members.sort_unstable();
    Ok(CongruenceClass { members })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Schensted,
    ClassBfs,
    StripZOverBase,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Schensted => "schensted",
            Strategy::ClassBfs => "class-bfs",
            Strategy::StripZOverBase => "strip-z-over-base",
        })
    }
}

/// Outcome of a centrality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centrality {
    pub central: bool,
    /// First word (generators first, then longer words) that fails to commute.
    pub witness: Option<Word>,
    /// Words up to this length were checked exhaustively.
    pub checked_up_to: usize,
}

/// A monoid together with a way of deciding its word problem.
///
/// Handles memoize congruence classes internally; the cache never changes
/// results.
pub struct MonoidHandle {
    presentation: Presentation,
    strategy: Strategy,
    base: Option<Arc<MonoidHandle>>,
    refines_plactic: bool,
    /// Set for N1 and N2, whose equality is read off a class key.
    kind: Option<Kind>,
    caps: Caps,
    classes: RwLock<HashMap<Word, Arc<CongruenceClass>>>,
}

impl fmt::Debug for MonoidHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidHandle")
            .field("name", &self.presentation.name)
            .field("strategy", &self.strategy)
            .field("relations", &self.presentation.relations.len())
            .finish()
    }
}

impl MonoidHandle {
    fn build(
        presentation: Presentation,
        strategy: Strategy,
        base: Option<Arc<MonoidHandle>>,
        caps: Caps,
    ) -> MonoidHandle {
        let refines_plactic = presentation.alphabet.size() == 3 && presentation.extends(&Presentation::plactic());
        let kind = match strategy {
            Strategy::ClassBfs => Kind::of(&presentation),
            _ => None,
        };
        MonoidHandle { presentation, strategy, base, refines_plactic, kind, caps, classes: RwLock::new(HashMap::new()) }
    }

    /// The plactic monoid decided through Schensted insertion.
    pub fn schensted(caps: Caps) -> MonoidHandle {
        MonoidHandle::build(Presentation::plactic(), Strategy::Schensted, None, caps)
    }

    /// A length-preserving presentation decided by class enumeration.
    pub fn class_bfs(presentation: Presentation, caps: Caps) -> Result<MonoidHandle> {
        if !presentation.is_length_preserving() {
            return Err(Error::Strategy(format!(
                "{} is not length-preserving; class-bfs cannot decide it",
                presentation.name
            )));
        }
        Ok(MonoidHandle::build(presentation, Strategy::ClassBfs, None, caps))
    }

    /// Same presentation, decided by class enumeration alone. Serves as the
    /// oracle for the class keys.
    pub fn class_oracle(&self) -> Result<MonoidHandle> {
        let mut h = MonoidHandle::class_bfs(self.presentation.clone(), self.caps)?;
        h.kind = None;
        Ok(h)
    }

    /// Whether equality is decided by a class key.
    pub fn has_class_key(&self) -> bool {
        self.kind.is_some()
    }

    /// The quotient of `base` by `cba = 1`.
    pub fn z_quotient(name: &str, base: Arc<MonoidHandle>) -> Result<MonoidHandle> {
        base.require_z()?;
        let presentation = base.presentation.with_relation(name, plactic::z_word(), Word::empty());
        let caps = base.caps;
        Ok(MonoidHandle::build(presentation, Strategy::StripZOverBase, Some(base), caps))
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn base(&self) -> Option<&Arc<MonoidHandle>> {
        self.base.as_ref()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn alphabet(&self) -> Alphabet {
        self.presentation.alphabet
    }

    /// Every relation of `other` holds here.
    pub fn is_quotient_of(&self, other: &MonoidHandle) -> bool {
        self.presentation.extends(&other.presentation)
    }

    /// Whether equal words always have equal length.
    pub fn preserves_length(&self) -> bool {
        self.strategy != Strategy::StripZOverBase
    }

    fn require_z(&self) -> Result<()> {
        if self.alphabet().size() != 3 {
            return Err(Error::Domain(format!("{} is not over a, b, c; z = cba is undefined", self.name())));
        }
        if self.strategy == Strategy::StripZOverBase {
            return Err(Error::Domain(format!("z = 1 in {}", self.name())));
        }
        Ok(())
    }

    /// The (memoized) congruence class of `w`.
    pub fn class_of(&self, w: &Word) -> Result<Arc<CongruenceClass>> {
        if let Some(c) = self.classes.read().expect("class cache poisoned").get(w) {
            return Ok(Arc::clone(c));
        }
        let class = Arc::new(congruence_class(&self.presentation, w, &self.caps)?);
        let mut cache = self.classes.write().expect("class cache poisoned");
        if cache.len() + class.len() > CACHE_LIMIT {
            cache.clear();
        }
        for m in &class.members {
            cache.insert(m.clone(), Arc::clone(&class));
        }
        Ok(class)
    }

    /// Canonical representative of the element represented by `w`.
    pub fn canonical(&self, w: &Word) -> Result<Word> {
        self.alphabet().check(w)?;
        match self.strategy {
            Strategy::Schensted => Ok(plactic::canonical_word(w)),
            Strategy::ClassBfs => Ok(self.class_of(w)?.canon().clone()),
            Strategy::StripZOverBase => {
                let base = self.base.as_ref().expect("strip-z handles carry a base");
                Ok(base.z_valuation(w)?.0)
            }
        }
    }

    /// Whether `u` and `v` represent the same element.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.alphabet().check(u)?;
        self.alphabet().check(v)?;
        if u == v {
            return Ok(true);
        }
        match self.strategy {
            Strategy::Schensted => Ok(plactic::equal(u, v)),
            Strategy::ClassBfs => {
                if u.len() != v.len() {
                    return Ok(false);
                }
                if self.presentation.is_balanced() && u.content() != v.content() {
                    return Ok(false);
                }
                if self.refines_plactic && plactic::equal(u, v) {
                    return Ok(true);
                }
                if let Some(kind) = self.kind {
                    return Ok(kind.key(u) == kind.key(v));
                }
                Ok(self.class_of(u)?.contains(v))
            }
            Strategy::StripZOverBase => Ok(self.canonical(u)? == self.canonical(v)?),
        }
    }

    /// A value that is equal for two words exactly when they are equal here:
    /// the tableau for M, the class key for N1 and N2, otherwise the
    /// canonical word.
    pub fn class_key(&self, w: &Word) -> Result<Vec<usize>> {
        self.alphabet().check(w)?;
        let letters = |u: &Word| u.iter().map(|l| l.index()).collect();
        match (self.strategy, self.kind) {
            (Strategy::Schensted, _) => Ok(letters(&plactic::canonical_word(w))),
            (Strategy::ClassBfs, Some(kind)) => Ok(kind.key(w)),
            _ => Ok(letters(&self.canonical(w)?)),
        }
    }

    /// Whether `w = z·u` for some `u`.
    pub fn divisible_by_z(&self, w: &Word) -> Result<bool> {
        self.require_z()?;
        self.alphabet().check(w)?;
        if w.len() < 3 {
            return Ok(false);
        }
        match self.strategy {
            Strategy::Schensted => Ok(plactic::normal_form(w).strip_z()?.power > 0),
            _ => Ok(self.z_step(w)?.is_some()),
        }
    }

    /// One division by z: a word for the quotient, or `None` when `w` is not
    /// divisible by z.
    fn z_step(&self, w: &Word) -> Result<Option<Word>> {
        if w.len() < 3 {
            return Ok(None);
        }
        if let Some(kind) = self.kind {
            return Ok(kind.divide_by_z(w));
        }
        let class = self.class_of(w)?;
        // members are sorted, so the first hit is the lex-least one
        Ok(class.members.iter().find(|m| m.starts_with(&plactic::z_word())).map(|m| Word(m.0[3..].to_vec())))
    }

    /// Divisibility by z decided by the class scan, whatever the strategy.
    pub fn divisible_by_z_via_classes(&self, w: &Word) -> Result<bool> {
        self.require_z()?;
        if w.len() < 3 {
            return Ok(false);
        }
        let class = congruence_class(&self.presentation, w, &self.caps)?;
        Ok(class.members.iter().any(|m| m.starts_with(&plactic::z_word())))
    }

    /// Maximal `k` with `w = z^k · reduced`; `reduced` is returned canonical.
    pub fn z_valuation(&self, w: &Word) -> Result<(Word, usize)> {
        self.require_z()?;
        self.alphabet().check(w)?;
        match self.strategy {
            Strategy::Schensted => {
                let d = plactic::normal_form(w).strip_z()?;
                Ok((d.reduced.reading_word(), d.power))
            }
            _ => {
                let mut current = w.clone();
                let mut k = 0;
                while let Some(rest) = self.z_step(&current)? {
                    current = rest;
                    k += 1;
                }
                Ok((self.canonical(&current)?, k))
            }
        }
    }

    /// Canonical representatives of all elements with a representative of
    /// length at most `max_len`, in length-then-lex order.
    pub fn elements_up_to(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut seen = HashSet::new();
        for u in self.alphabet().words_up_to(max_len) {
            seen.insert(self.canonical(&u)?);
        }
        let mut out: Vec<Word> = seen.into_iter().collect();
        out.sort_by(shortlex);
        Ok(out)
    }

    /// `w` commutes with every generator (which decides centrality), and with
    /// every word of length at most `check_len`.
    pub fn is_central(&self, w: &Word, check_len: usize) -> Result<Centrality> {
        let gens = self.alphabet().letters().map(|l| Word(vec![l]));
        let longer = (2..=check_len).flat_map(|n| self.alphabet().words_of_length(n));
        for u in gens.chain(longer) {
            if !self.equal(&w.concat(&u), &u.concat(w))? {
                return Ok(Centrality { central: false, witness: Some(u), checked_up_to: check_len });
            }
        }
        Ok(Centrality { central: true, witness: None, checked_up_to: check_len })
    }

    /// Canonical elements of length at most `max_len` that commute with every generator.
    pub fn central_elements_up_to(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for e in self.elements_up_to(max_len)? {
            if self.is_central(&e, 1)?.central {
                out.push(e);
            }
        }
        Ok(out)
    }
}

/// The built-in monoids M, N1, N2, M', N1', N2'.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub m: Arc<MonoidHandle>,
    pub n1: Arc<MonoidHandle>,
    pub n2: Arc<MonoidHandle>,
    pub m_prime: Arc<MonoidHandle>,
    pub n1_prime: Arc<MonoidHandle>,
    pub n2_prime: Arc<MonoidHandle>,
    extra: Vec<Arc<MonoidHandle>>,
}

impl Catalog {
    pub fn new(caps: Caps) -> Catalog {
        let plactic = Presentation::plactic();
        let m = Arc::new(MonoidHandle::schensted(caps));
        let n1 = Arc::new(
            MonoidHandle::class_bfs(plactic.with_relation("N1", w("ac"), w("ca")), caps).expect("length-preserving"),
        );
        let n2 = Arc::new(
            MonoidHandle::class_bfs(plactic.with_relation("N2", w("bacb"), w("cbab")), caps)
                .expect("length-preserving"),
        );
        let quotient = |name: &str, base: &Arc<MonoidHandle>| {
            Arc::new(MonoidHandle::z_quotient(name, Arc::clone(base)).expect("rank-3 base"))
        };
        Catalog {
            m_prime: quotient("M'", &m),
            n1_prime: quotient("N1'", &n1),
            n2_prime: quotient("N2'", &n2),
            m,
            n1,
            n2,
            extra: Vec::new(),
        }
    }

    pub fn builtin() -> Catalog {
        Catalog::new(Caps::default())
    }

    /// The plactic monoid again, but decided by class enumeration; the
    /// independent oracle for the Schensted route.
    pub fn plactic_by_classes(&self) -> MonoidHandle {
        MonoidHandle::class_bfs(Presentation::plactic(), self.m.caps()).expect("length-preserving")
    }

    /// Adds a monoid loaded from a presentation file.
    pub fn register(&mut self, presentation: Presentation) -> Result<Arc<MonoidHandle>> {
        if self.get(&presentation.name).is_some() {
            return Err(Error::Config(format!("monoid {} already exists", presentation.name)));
        }
        let handle = Arc::new(MonoidHandle::class_bfs(presentation, self.m.caps())?);
        self.extra.push(Arc::clone(&handle));
        Ok(handle)
    }

    pub fn handles(&self) -> Vec<Arc<MonoidHandle>> {
        let mut out = vec![
            Arc::clone(&self.m),
            Arc::clone(&self.n1),
            Arc::clone(&self.n2),
            Arc::clone(&self.m_prime),
            Arc::clone(&self.n1_prime),
            Arc::clone(&self.n2_prime),
        ];
        out.extend(self.extra.iter().cloned());
        out
    }

    /// Looks a monoid up by name; primes may be written `'`, `′` or `p`.
    pub fn get(&self, name: &str) -> Option<Arc<MonoidHandle>> {
        let normalized = name.trim().replace('′', "'");
        let normalized = match normalized.strip_suffix('p') {
            Some(stem) if !stem.is_empty() && self.get(&format!("{stem}'")).is_some() => format!("{stem}'"),
            _ => normalized,
        };
        self.handles().into_iter().find(|h| h.name() == normalized)
    }
}

/// The built-in catalog with default caps.
pub fn catalog() -> Vec<Arc<MonoidHandle>> {
    Catalog::builtin().handles()
}

/// Groups `words` by `key_a` and by `key_b` and reports every place where
/// the two partitions differ, as word pairs.
fn partition_mismatches<K1, K2>(
    words: &[Word],
    key_a: impl Fn(&Word) -> Result<K1>,
    key_b: impl Fn(&Word) -> Result<K2>,
) -> Result<Vec<(Word, Word, bool)>>
where
    K1: std::hash::Hash + Eq,
    K2: std::hash::Hash + Eq,
{
    // rep_by_a[k] = first word with key_a = k, together with its key_b
    let mut by_a: HashMap<K1, (Word, K2)> = HashMap::new();
    let mut by_b: HashMap<K2, (Word, ())> = HashMap::new();
    let mut out = Vec::new();
    let mut keyed = Vec::with_capacity(words.len());
    for u in words {
        keyed.push((u, key_a(u)?, key_b(u)?));
    }
    // a-equal ⟹ b-equal
    let mut pending = Vec::new();
    for (u, ka, kb) in keyed {
        match by_a.get(&ka) {
            Some((rep, rep_kb)) => {
                if *rep_kb != kb {
                    out.push((rep.clone(), u.clone(), true));
                }
            }
            None => {
                by_a.insert(ka, (u.clone(), kb));
            }
        }
    }
    // b-equal ⟹ a-equal: distinct a-classes must have distinct b-keys
    for (_, (rep, kb)) in by_a.into_iter() {
        pending.push((rep, kb));
    }
    pending.sort_by(|x, y| x.0.cmp(&y.0));
    for (rep, kb) in pending {
        match by_b.get(&kb) {
            Some((other, ())) => out.push((other.clone(), rep, false)),
            None => {
                by_b.insert(kb, (rep, ()));
            }
        }
    }
    Ok(out)
}

/// Checks that two handles over the same alphabet induce the same equality
/// on all words of each length up to `max_len`.
pub fn agreement_check(a: &MonoidHandle, b: &MonoidHandle, max_len: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new(format!("agreement {} vs {}", a.name(), b.name()), max_len as u64)
        .param("left", a.strategy().to_string())
        .param("right", b.strategy().to_string());
    for n in 0..=max_len {
        let words: Vec<Word> = a.alphabet().words_of_length(n).collect();
        report.checked += words.len() as u64;
        match partition_mismatches(&words, |u| a.class_key(u), |u| b.class_key(u)) {
            Ok(bad) => {
                for (u, v, left_equal) in bad {
                    let (yes, no) = if left_equal { (a, b) } else { (b, a) };
                    report
                        .violation(format!("{u} vs {v}"), format!("equal in {} but not in {}", yes.name(), no.name()));
                }
            }
            Err(e) => report.error(format!("length {n}: {e}")),
        }
    }
    report.finish(started)
}

/// Every defining relation of `h` holds in `h`.
pub fn defining_relations_check(h: &MonoidHandle) -> Report {
    let started = Instant::now();
    let mut report = Report::new("defining-relations", 0).param("monoid", h.name());
    for (l, r) in &h.presentation().relations {
        report.checked += 1;
        match h.equal(l, r) {
            Ok(true) => {}
            Ok(false) => report.violation(format!("{l}={r}"), "relation does not hold"),
            Err(e) => report.error(format!("{l}={r}: {e}")),
        }
    }
    report.finish(started)
}

/// Structure of `m_prime = base/(z=1)`: z equals 1, and on z-free words of
/// length at most `max_len` equality in the base and in `m_prime` coincide,
/// so `v ↦ v̄` preserves base equalities and is injective on z-free elements.
pub fn z_one_quotient_check(base: &MonoidHandle, m_prime: &MonoidHandle, max_len: usize) -> Report {
    let started = Instant::now();
    let mut report =
        Report::new("z-one-quotient", max_len as u64).param("base", base.name()).param("quotient", m_prime.name());
    report.checked += 1;
    match m_prime.equal(&plactic::z_word(), &Word::empty()) {
        Ok(true) => {}
        Ok(false) => report.violation("cba", "z is not 1"),
        Err(e) => report.error(e.to_string()),
    }
    let mut words = Vec::new();
    for u in base.alphabet().words_up_to(max_len) {
        match base.divisible_by_z(&u) {
            Ok(false) => words.push(u),
            Ok(true) => {}
            Err(e) => report.error(format!("{u}: {e}")),
        }
    }
    report.checked += words.len() as u64;
    match partition_mismatches(&words, |u| base.class_key(u), |u| m_prime.class_key(u)) {
        Ok(bad) => {
            for (u, v, base_equal) in bad {
                let detail = if base_equal {
                    format!("equal in {} but not in {}", base.name(), m_prime.name())
                } else {
                    format!("distinct z-free elements of {} collapse in {}", base.name(), m_prime.name())
                };
                report.violation(format!("{u} vs {v}"), detail);
            }
        }
        Err(e) => report.error(e.to_string()),
    }
    report.finish(started)
}

/// For all pairs of equal-length words up to `max_len`:
/// `u = v` in M iff `u = v` in both N1 and N2.
pub fn subdirect_check(m: &MonoidHandle, n1: &MonoidHandle, n2: &MonoidHandle, max_len: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new("subdirect", max_len as u64).param("monoids", vec![m.name(), n1.name(), n2.name()]);
    for n in 0..=max_len {
        let words: Vec<Word> = m.alphabet().words_of_length(n).collect();
        report.checked += (words.len() * words.len()) as u64;
        let pair = |u: &Word| Ok((n1.canonical(u)?, n2.canonical(u)?));
        match partition_mismatches(&words, |u| m.canonical(u), pair) {
            Ok(bad) => {
                for (u, v, m_equal) in bad {
                    let detail = if m_equal {
                        format!("equal in {} but separated by {} or {}", m.name(), n1.name(), n2.name())
                    } else {
                        format!("equal in {} and {} but not in {}", n1.name(), n2.name(), m.name())
                    };
                    report.violation(format!("{u} vs {v}"), detail);
                }
            }
            Err(e) => report.error(format!("length {n}: {e}")),
        }
    }
    report.finish(started)
}

/// For all `w`, `v` with `|w| = |v| <= max_len`: `z·w = z·v` implies `w = v`.
pub fn z_cancellation_check(h: &MonoidHandle, max_len: usize) -> Report {
    let started = Instant::now();
    let mut report = Report::new("z-cancellation", max_len as u64).param("monoid", h.name());
    if h.strategy() != Strategy::Schensted {
        report.note(format!("cancellation of z in {} is verified up to the bound only", h.name()));
    }
    let z = plactic::z_word();
    for n in 0..=max_len {
        let words: Vec<Word> = h.alphabet().words_of_length(n).collect();
        report.checked += (words.len() * words.len()) as u64;
        let mut by_product: HashMap<Word, (Word, Word)> = HashMap::new();
        for u in &words {
            let keys = h.canonical(&z.concat(u)).and_then(|zu| Ok((zu, h.canonical(u)?)));
            let (zu, cu) = match keys {
                Ok(k) => k,
                Err(e) => {
                    report.error(format!("{u}: {e}"));
                    continue;
                }
            };
            match by_product.get(&zu) {
                Some((rep, rep_canon)) if *rep_canon != cu => {
                    report.violation(format!("{rep} vs {u}"), "z·w = z·v but w != v");
                }
                Some(_) => {}
                None => {
                    by_product.insert(zu, (u.clone(), cu));
                }
            }
        }
    }
    report.finish(started)
}

/// `w` commutes with every word of length at most `max_len`.
pub fn commutation_check(h: &MonoidHandle, w: &Word, max_len: usize) -> Report {
    let started = Instant::now();
    let mut report =
        Report::new("commutation", max_len as u64).param("monoid", h.name()).param("element", w.to_string());
    for u in h.alphabet().words_up_to(max_len) {
        report.checked += 1;
        match h.equal(&w.concat(&u), &u.concat(w)) {
            Ok(true) => {}
            Ok(false) => report.violation(u.to_string(), format!("{w} does not commute with {u}")),
            Err(e) => report.error(format!("{u}: {e}")),
        }
    }
    report.finish(started)
}

/// The central elements of length at most `max_len` are exactly `expected`.
pub fn center_check(h: &MonoidHandle, max_len: usize, expected: &[Word]) -> Report {
    let started = Instant::now();
    let mut report = Report::new("center", max_len as u64).param("monoid", h.name());
    match h.central_elements_up_to(max_len) {
        Ok(found) => {
            report.checked = found.len() as u64;
            let mut expected: Vec<Word> = expected.to_vec();
            expected.sort_by(shortlex);
            if found != expected {
                let show = |ws: &[Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ");
                report.violation("center", format!("found {{{}}}, expected {{{}}}", show(&found), show(&expected)));
            }
        }
        Err(e) => report.error(e.to_string()),
    }
    report.finish(started)
}
