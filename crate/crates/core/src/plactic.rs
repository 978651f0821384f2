//! Semistandard tableaux and Schensted row insertion.
//!
//! Rows are weakly increasing left to right, columns strictly increasing top
//! to bottom, and the reading word concatenates the rows from the bottom row
//! up. With this orientation a full column of a rank-3 tableau reads `cba`,
//! the central element z.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Content, Letter, Word};

/// A semistandard Young tableau; `rows[0]` is the top row.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn empty() -> Tableau {
        Tableau::default()
    }

    /// Builds a tableau from explicit rows, checking the shape and the row
    /// and column conditions.
    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Result<Tableau> {
        let rows: Vec<Vec<Letter>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::Domain(format!("row {i} is not weakly increasing")));
            }
            if i > 0 {
                let above = &rows[i - 1];
                if row.len() > above.len() {
                    return Err(Error::Domain(format!("row {i} is longer than the row above")));
                }
                if row.iter().zip(above).any(|(lo, hi)| lo <= hi) {
                    return Err(Error::Domain(format!("a column through row {i} is not strictly increasing")));
                }
            }
        }
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    /// Row lengths, top to bottom.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Schensted row insertion of `x`.
    pub fn insert(&mut self, x: Letter) {
        let mut carry = x;
        for row in self.rows.iter_mut() {
            match row.iter().position(|&y| y > carry) {
                Some(pos) => carry = std::mem::replace(&mut row[pos], carry),
                None => {
                    row.push(carry);
                    return;
                }
            }
        }
        self.rows.push(vec![carry]);
    }

    pub fn inserted(mut self, x: Letter) -> Tableau {
        self.insert(x);
        self
    }

    /// Rows concatenated from the bottom row to the top row.
    pub fn reading_word(&self) -> Word {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Columns from left to right, each read from the bottom up.
    pub fn column_reading_word(&self) -> Word {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut out = Vec::with_capacity(self.size());
        for j in 0..width {
            out.extend(self.rows.iter().rev().filter_map(|r| r.get(j).copied()));
        }
        Word(out)
    }

    pub fn content(&self) -> Content {
        self.reading_word().content()
    }

    /// Splits off the full `abc` columns: `self = reduced * z^power` where z
    /// is the element `cba`. Only defined for tableaux with at most 3 rows.
    pub fn strip_z(&self) -> Result<ZDecomposition> {
        if self.rows.len() > 3 {
            return Err(Error::Domain(format!("strip_z needs a tableau with at most 3 rows, got {}", self.rows.len())));
        }
        let power = if self.rows.len() == 3 { self.rows[2].len() } else { 0 };
        let rows = self.rows.iter().map(|r| r[power..].to_vec()).collect();
        let reduced = Tableau::from_rows(rows).expect("removing leftmost columns keeps a tableau valid");
        Ok(ZDecomposition { reduced, power })
    }

    /// Multi-line rendering, one row per line, top row first.
    pub fn grid(&self) -> String {
        if self.rows.is_empty() {
            return "(empty)".to_string();
        }
        self.rows
            .iter()
            .map(|row| row.iter().map(|l| l.to_char().to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|row| row.iter().map(|l| l.to_char()).collect()).collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_strings().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<String>::deserialize(deserializer)?;
        let rows = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|ch| Letter::from_char(ch).ok_or_else(|| D::Error::custom(format!("bad letter {ch:?}"))))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Tableau::from_rows(rows).map_err(D::Error::custom)
    }
}

/// `reduced * z^power`, with `reduced` free of full columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZDecomposition {
    pub reduced: Tableau,
    pub power: usize,
}

/// Tableau of the plactic class of `w`: the fold of row insertion over its letters.
pub fn normal_form(w: &Word) -> Tableau {
    let mut t = Tableau::empty();
    for x in w.iter() {
        t.insert(x);
    }
    t
}

/// Canonical word of the plactic class of `w`.
pub fn canonical_word(w: &Word) -> Word {
    normal_form(w).reading_word()
}

/// Word problem of the plactic monoid.
pub fn equal(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && normal_form(u) == normal_form(v)
}

/// Product of two plactic classes, computed by inserting the letters of the
/// right factor into the tableau of the left one.
pub fn product(t: &Tableau, u: &Tableau) -> Tableau {
    let mut out = t.clone();
    for x in u.reading_word().iter() {
        out.insert(x);
    }
    out
}

/// The element z = `cba`.
pub fn z_word() -> Word {
    Word(vec![Letter::C, Letter::B, Letter::A])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{w, Alphabet};

    fn rows(t: &Tableau) -> Vec<String> {
        t.row_strings()
    }

    #[test]
    fn insertion_examples() {
        let t = Tableau::empty().inserted(Letter::C).inserted(Letter::B).inserted(Letter::A);
        assert_eq!(rows(&t), ["a", "b", "c"]);
        assert_eq!(rows(&Tableau::empty().inserted(Letter::A)), ["a"]);
        assert_eq!(rows(&normal_form(&w("a")).inserted(Letter::B)), ["ab"]);
    }

    #[test]
    fn knuth_relation_and_proper_quotient() {
        assert_eq!(normal_form(&w("aba")), normal_form(&w("baa")));
        assert_ne!(normal_form(&w("cbab")), normal_form(&w("bcab")));
        assert_eq!(rows(&normal_form(&w("cba"))), ["a", "b", "c"]);
    }

    #[test]
    fn reading_words() {
        assert_eq!(normal_form(&w("cba")).reading_word(), w("cba"));
        assert_eq!(normal_form(&w("ab")).reading_word(), w("ab"));
        assert_eq!(Tableau::empty().reading_word(), Word::empty());
        assert_eq!(normal_form(&w("cab")).column_reading_word(), w("cab"));
        assert_eq!(normal_form(&w("bcab")).column_reading_word(), w("bacb"));
    }

    #[test]
    fn equality_examples() {
        assert!(equal(&w("bab"), &w("bba")));
        assert!(!equal(&w("bacb"), &w("cbab")));
        assert!(!equal(&w("ab"), &w("ba")));
    }

    #[test]
    fn strip_z_examples() {
        let d = normal_form(&w("cba")).strip_z().unwrap();
        assert_eq!((d.reduced, d.power), (Tableau::empty(), 1));
        let ab = normal_form(&w("ab"));
        let d = ab.strip_z().unwrap();
        assert_eq!((d.reduced, d.power), (ab, 0));
        let d = normal_form(&w("cbacba")).strip_z().unwrap();
        assert_eq!((d.reduced, d.power), (Tableau::empty(), 2));
        assert_eq!(normal_form(&w("cbacba")).reading_word(), w("ccbbaa"));
    }

    #[test]
    fn strip_z_rejects_four_rows() {
        assert!(normal_form(&w("dcba")).strip_z().is_err());
    }

    #[test]
    fn contents() {
        let c = normal_form(&w("cba")).content();
        assert_eq!(c.counts(), &[1, 1, 1]);
        assert_eq!(Tableau::empty().content().total(), 0);
        assert_eq!(normal_form(&w("aba")).content().counts(), &[2, 1]);
    }

    #[test]
    fn json_rows_top_first() {
        let t = normal_form(&w("cab"));
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"["ab","c"]"#);
        let back: Tableau = serde_json::from_str(r#"["ab","c"]"#).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tableau>(r#"["ba"]"#).is_err());
        assert!(serde_json::from_str::<Tableau>(r#"["ab","a"]"#).is_err());
        assert!(serde_json::from_str::<Tableau>(r#"["a","bc"]"#).is_err());
    }

    #[test]
    fn grid_printer() {
        assert_eq!(normal_form(&w("cab")).grid(), "a b\nc");
        assert_eq!(Tableau::empty().grid(), "(empty)");
    }

    #[test]
    fn insertion_is_rank_generic() {
        let t = normal_form(&w("edcba"));
        assert_eq!(t.shape(), vec![1; 5]);
        assert_eq!(t.reading_word(), w("edcba"));
        let abcde = Alphabet::new(5).unwrap();
        for u in abcde.words_of_length(4) {
            let t = normal_form(&u);
            assert_eq!(Tableau::from_rows(t.rows().to_vec()).unwrap(), t);
            assert_eq!(normal_form(&t.reading_word()), t);
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn word(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..3, 0..max).prop_map(|v| Word(v.into_iter().map(Letter).collect()))
    }

    proptest! {
        #[test]
        fn reading_word_is_a_section(u in word(14)) {
            let t = normal_form(&u);
            prop_assert_eq!(normal_form(&t.reading_word()), t);
        }

        #[test]
        fn column_reading_word_is_a_section(u in word(14)) {
            let t = normal_form(&u);
            prop_assert_eq!(normal_form(&t.column_reading_word()), t);
        }

        #[test]
        fn content_is_preserved(u in word(14)) {
            prop_assert_eq!(normal_form(&u).content(), u.content());
        }

        #[test]
        fn strip_z_recomposes(u in word(14)) {
            let t = normal_form(&u);
            let d = t.strip_z().unwrap();
            prop_assert!(d.reduced.rows().len() < 3);
            let recomposed = d.reduced.reading_word().concat(&z_word().pow(d.power));
            prop_assert!(equal(&recomposed, &t.reading_word()));
        }

        #[test]
        fn product_is_associative_with_normalization(u in word(8), v in word(8)) {
            let whole = normal_form(&u.concat(&v));
            prop_assert_eq!(&whole, &normal_form(&canonical_word(&u).concat(&v)));
            prop_assert_eq!(whole, product(&normal_form(&u), &normal_form(&v)));
        }
    }
}
