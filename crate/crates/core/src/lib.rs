pub mod checker;
pub mod formula;
pub mod oracle;

pub mod proof;
pub mod registry;
pub mod schema;
pub mod search;
pub mod settheory;
pub mod syntax;

pub use formula::{Formula, Level, Term};
