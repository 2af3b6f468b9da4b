//! Weighted blowups and the lower-bound curve they trace for the induced
//! density of K(2,2,1).

mod blowup;
mod curve;

pub use blowup::{blowup_density, BlowupModel};
pub use curve::{
    conjecture_construction, conjecture_piece, conjecture_value, knot_continuity,
    parse_profile_golden, piece_for, profile_csv, profile_table, turan_bound, KnotCheck, Piece,
    ProfilePoint,
};
