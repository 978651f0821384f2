//! Exact class keys for the quotients N1 = M/(ac=ca) and N2 = M/(bacb=cbab)
//! of the plactic monoid M over a < b < c. Two words are equal in the
//! quotient exactly when their keys coincide, so equality costs a few
//! passes over the words instead of a class enumeration.
//!
//! N1. The key is the content, the number λ3 of full columns of the
//! tableau, and the first-row lengths of the tableaux of the {a,b}- and
//! {b,c}-restrictions.
//!
//! * Constant on classes: restriction to an interval of the alphabet is a
//!   homomorphism of plactic monoids and `ac=ca` restricts to trivial
//!   relations; λ3 is the largest number of disjoint `cba` subsequences,
//!   which swapping an adjacent `ac` cannot change.
//! * Separating: write the tableau as z^λ3·T with T free of full columns.
//!   Reading T by columns and commuting a with c gives, in N1,
//!   `(ba)^i a^j x` with `x` a word over {b,c}. The key fixes i, j, the
//!   content of `x` and its longest weakly increasing subsequence, which
//!   together fix `x` in the plactic monoid on {b,c}.
//!
//! N2. This is the grammic monoid: a word acts on rows of tableaux by
//! Schensted insertion keeping only the row, and N2-equality is equality of
//! these actions (Choffrut). The key is the content together with the action
//! on the rows without `a`; letters `a` in a row never influence the rest,
//! and rows holding more than |w| copies of `b` or `c` only translate.

use crate::plactic::{normal_form, Tableau};
use crate::presentations::Presentation;
use crate::words::{w, Letter, Word};

/// Quotients of M with an exact class key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// M/(ac=ca)
    AcCommute,
    /// M/(bacb=cbab)
    Grammic,
}

/// Relations of `p` that are not Knuth relations, or `None` when `p` does
/// not contain all of them.
pub fn extra_relations(p: &Presentation) -> Option<Vec<(Word, Word)>> {
    let m = Presentation::plactic();
    if p.alphabet != m.alphabet || !p.extends(&m) {
        return None;
    }
    let knuth = |l: &Word, r: &Word| m.relations.iter().any(|(a, b)| (a == l && b == r) || (a == r && b == l));
    Some(p.relations.iter().filter(|(l, r)| !knuth(l, r)).cloned().collect())
}

impl Kind {
    /// Recognises N1 and N2 by their relations, whatever their names.
    pub fn of(p: &Presentation) -> Option<Kind> {
        let extra = extra_relations(p)?;
        let is = |a: &str, b: &str| {
            !extra.is_empty() && extra.iter().all(|(l, r)| (*l == w(a) && *r == w(b)) || (*l == w(b) && *r == w(a)))
        };
        if is("ac", "ca") {
            Some(Kind::AcCommute)
        } else if is("bacb", "cbab") {
            Some(Kind::Grammic)
        } else {
            None
        }
    }

    /// Class key of `u`.
    pub fn key(self, u: &Word) -> Vec<usize> {
        let c = u.content();
        let mut out = vec![c.get(0), c.get(1), c.get(2)];
        match self {
            Kind::AcCommute => {
                let t = normal_form(u);
                out.push(t.rows().get(2).map_or(0, Vec::len));
                out.push(t.rows().first().map_or(0, |r| r.iter().filter(|&&l| l != Letter::C).count()));
                out.push(longest_bc(u));
            }
            Kind::Grammic => {
                let n = u.len();
                for b0 in 0..=n {
                    for c0 in 0..=n {
                        let (b, c) = act_on_row(u, b0, c0);
                        out.push(b);
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Whether the element of `u` is `z·y` for some `y`. On success returns
    /// a word for `y`.
    pub fn divide_by_z(self, u: &Word) -> Option<Word> {
        let t = normal_form(u);
        match self {
            // λ3 is part of the key, so a full column exists in every
            // member of the class or in none
            Kind::AcCommute => {
                let d = t.strip_z().ok()?;
                (d.power > 0).then(|| strip_one_column(&t))
            }
            Kind::Grammic => {
                if t.rows().len() == 3 {
                    return Some(strip_one_column(&t));
                }
                let c = u.content();
                let counts = [c.get(0), c.get(1), c.get(2)];
                if counts.contains(&0) {
                    return None;
                }
                let target = self.key(u);
                let z = crate::plactic::z_word();
                tableaux_with_content(counts.map(|n| n - 1))
                    .into_iter()
                    .map(|y| y.reading_word())
                    .find(|y| self.key(&z.concat(y)) == target)
            }
        }
    }
}

fn strip_one_column(t: &Tableau) -> Word {
    let rows = t.rows().iter().map(|r| r[1..].to_vec()).collect();
    Tableau::from_rows(rows).expect("removing the first column keeps a tableau valid").reading_word()
}

/// Longest weakly increasing subsequence of the {b,c}-subword.
fn longest_bc(u: &Word) -> usize {
    let total_c = u.occ(Letter::C);
    let mut best = total_c;
    let (mut b_seen, mut c_seen) = (0, 0);
    for l in u.iter() {
        if l == Letter::B {
            b_seen += 1;
        } else if l == Letter::C {
            c_seen += 1;
        }
        best = best.max(b_seen + total_c - c_seen);
    }
    best
}

/// Numbers of `b` and `c` in the row `b^b0 c^c0` after inserting `u` and
/// discarding bumped letters; `a`s are not tracked.
fn act_on_row(u: &Word, b0: usize, c0: usize) -> (usize, usize) {
    let (mut b, mut c) = (b0, c0);
    for l in u.iter() {
        match l {
            Letter::A => {
                if b > 0 {
                    b -= 1;
                } else {
                    c = c.saturating_sub(1);
                }
            }
            Letter::B => {
                b += 1;
                c = c.saturating_sub(1);
            }
            _ => c += 1,
        }
    }
    (b, c)
}

/// All tableaux over a, b, c with the given letter counts.
pub fn tableaux_with_content(counts: [usize; 3]) -> Vec<Tableau> {
    let [na, nb, nc] = counts;
    let mut out = Vec::new();
    // column types: abc, ab, ac, bc, then single letters
    for full in 0..=na.min(nb).min(nc) {
        for ab in 0..=(na - full).min(nb - full) {
            for ac in 0..=(na - full - ab).min(nc - full) {
                for bc in 0..=(nb - full - ab).min(nc - full - ac) {
                    let a = na - full - ab - ac;
                    let b = nb - full - ab - bc;
                    let c = nc - full - ac - bc;
                    if bc > 0 && a > 0 {
                        continue;
                    }
                    let rep = |l: Letter, n: usize| std::iter::repeat_n(l, n);
                    let row1 = rep(Letter::A, full + ab + ac)
                        .chain(rep(Letter::B, bc))
                        .chain(rep(Letter::A, a))
                        .chain(rep(Letter::B, b))
                        .chain(rep(Letter::C, c))
                        .collect();
                    let row2 = rep(Letter::B, full + ab).chain(rep(Letter::C, ac + bc)).collect();
                    let row3 = rep(Letter::C, full).collect();
                    out.push(Tableau::from_rows(vec![row1, row2, row3]).expect("column counts give a tableau"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;
    use std::collections::{BTreeSet, HashMap};

    fn n1() -> Presentation {
        Presentation::plactic().with_relation("N1", w("ac"), w("ca"))
    }

    fn n2() -> Presentation {
        Presentation::plactic().with_relation("N2", w("bacb"), w("cbab"))
    }

    #[test]
    fn kinds_are_recognised_from_relations() {
        assert_eq!(Kind::of(&n1()), Some(Kind::AcCommute));
        assert_eq!(Kind::of(&n2()), Some(Kind::Grammic));
        assert_eq!(Kind::of(&Presentation::plactic()), None);
        let both = n1().with_relation("N12", w("bacb"), w("cbab"));
        assert_eq!(Kind::of(&both), None);
        assert_eq!(extra_relations(&both).unwrap().len(), 2);
        assert_eq!(extra_relations(&Presentation::plactic()).unwrap().len(), 0);
    }

    #[test]
    fn keys_of_defining_relations() {
        assert_eq!(Kind::AcCommute.key(&w("ac")), Kind::AcCommute.key(&w("ca")));
        assert_ne!(Kind::AcCommute.key(&w("bacb")), Kind::AcCommute.key(&w("cbab")));
        assert_eq!(Kind::Grammic.key(&w("bacb")), Kind::Grammic.key(&w("cbab")));
        assert_ne!(Kind::Grammic.key(&w("ac")), Kind::Grammic.key(&w("ca")));
        assert_eq!(Kind::Grammic.key(&w("cbab")), Kind::Grammic.key(&w("bcab")));
    }

    #[test]
    fn row_action_examples() {
        assert_eq!(act_on_row(&w("a"), 1, 1), (0, 1));
        assert_eq!(act_on_row(&w("a"), 0, 1), (0, 0));
        assert_eq!(act_on_row(&w("b"), 0, 2), (1, 1));
        assert_eq!(act_on_row(&w("c"), 0, 0), (0, 1));
        assert_eq!(act_on_row(&w(""), 3, 4), (3, 4));
    }

    #[test]
    fn longest_bc_examples() {
        assert_eq!(longest_bc(&w("cbcc")), 3);
        assert_eq!(longest_bc(&w("ccbb")), 2);
        assert_eq!(longest_bc(&w("aaa")), 0);
        assert_eq!(longest_bc(&w("")), 0);
    }

    #[test]
    fn division_examples() {
        for kind in [Kind::AcCommute, Kind::Grammic] {
            assert_eq!(kind.divide_by_z(&w("cba")), Some(w("")));
            assert_eq!(kind.divide_by_z(&w("ab")), None);
        }
        assert_eq!(Kind::AcCommute.divide_by_z(&w("bca")), None);
        let y = Kind::Grammic.divide_by_z(&w("bacb")).unwrap();
        assert_eq!(y, w("b"));
    }

    #[test]
    fn tableaux_by_content_match_insertion() {
        let alphabet = Alphabet::new(3).unwrap();
        for n in 0..=7 {
            let mut by_content: HashMap<[usize; 3], BTreeSet<Tableau>> = HashMap::new();
            for u in alphabet.words_of_length(n) {
                let c = u.content();
                by_content.entry([c.get(0), c.get(1), c.get(2)]).or_default().insert(normal_form(&u));
            }
            for (c, expected) in by_content {
                let got: BTreeSet<_> = tableaux_with_content(c).into_iter().collect();
                assert_eq!(got, expected);
            }
        }
    }
}
