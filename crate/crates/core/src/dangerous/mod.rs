//! Dangerous neighbourhoods of rational lines: arcs, stars, classes, and
//! their exhaustive enumeration.

pub mod arc;
pub mod classify;
pub mod enumerate;
pub mod line;
pub mod star;

pub use arc::{arcs, arcs_with_threshold, threshold, Arc};
pub use classify::{classify, verify_label, ClassLabel, SubClass, Variant};
pub use enumerate::{enumerate_below, enumerate_class, pruning_box, sort_stars, EnumerationConfig, PruningBox};
pub use line::Line;
pub use star::{is_exceptional, star_interval, StarInterval, StarType};
