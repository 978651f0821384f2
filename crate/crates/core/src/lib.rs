//! Computing in the plactic monoid on `a < b < c`, its quotients
//! `N1 = M/(ac=ca)`, `N2 = M/(bacb=cbab)`, their `cba = 1` quotients and
//! their central localizations, together with bounded identity checking.

pub mod error;
pub mod identities;
pub mod localization;
pub mod plactic;
pub mod presentations;
pub mod quotients;
pub mod report;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
pub use plactic::{Tableau, ZDecomposition};
pub use presentations::{catalog, Caps, Catalog, CongruenceClass, MonoidHandle, Presentation, Strategy};
pub use report::{Report, SuiteReport};
pub use suites::{run_suite, Suite, SuiteConfig};
pub use words::{Alphabet, Content, Identity, Letter, Substitution, Var, VarWord, Word};
