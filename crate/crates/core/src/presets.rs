//! Built-in symmetric pairs, selectable by name.
//!
//! | name     | system | compact positive roots | dual space        |
//! |----------|--------|------------------------|-------------------|
//! | su11     | A1     | —                      | 2-sphere          |
//! | hilbert2 | A1×A1  | —                      | S² × S²           |
//! | su21     | A2     | α₁                     | complex proj. plane |
//! | so41     | B2     | α₁, α₁+2α₂             | 4-sphere          |

use crate::rootdata::{build_root_system, CartanType};
use crate::sympair::{validate_pair, SymmetricPair};

pub const PRESET_NAMES: [&str; 4] = ["su11", "hilbert2", "su21", "so41"];

/// Look up a preset pair by name.
pub fn preset_pair(name: &str) -> Option<SymmetricPair> {
    let (cartan, compact): (&str, &[&[i64]]) = match name {
        "su11" => ("A1", &[]),
        "hilbert2" => ("A1xA1", &[]),
        "su21" => ("A2", &[&[1, 0]]),
        "so41" => ("B2", &[&[1, 0], &[1, 2]]),
        _ => return None,
    };
    let rs = build_root_system(&CartanType::parse(cartan).expect("preset type is valid"));
    let compact: Vec<Vec<i64>> = compact.iter().map(|s| s.to_vec()).collect();
    Some(validate_pair(rs, &compact).expect("preset grading is valid"))
}
