//! Pushouts along sieve inclusions, for categories and for double categories
//! of the form `C ⊠ P → C ⊠ Q`, and the check that the horizontal nerve
//! preserves the latter.

mod cat;
mod dbl;
mod verify;

pub use cat::{pushout_cat_sieve, type3_equal, CatPushout, FormalCell, PushoutCell, SievePushoutSpec};
pub use dbl::{pushout_dbl_box_sieve, DblPushout, DblSievePushoutSpec, SquareCell, VerticalCell};
pub use verify::{verify_nerve_preserves_pushout, LevelVerdict};

#[cfg(test)]
mod tests;
