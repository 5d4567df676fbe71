//! ASIL determination from a severity / exposure / controllability rating.

use crate::model::{Asil, Rating};

use super::EngineError;

/// Determine the ASIL of an in-range rating.
///
/// Encodes the ISO 26262-3 determination table. Any class at level 0 yields
/// QM outright; otherwise the level depends only on the sum s+e+c:
///
/// ```text
///            C1  C2  C3
///   S1  E1   QM  QM  QM
///       E2   QM  QM  QM
///       E3   QM  QM  A
///       E4   QM  A   B
///   S2  E1   QM  QM  QM
///       E2   QM  QM  A
///       E3   QM  A   B
///       E4   A   B   C
///   S3  E1   QM  QM  A
///       E2   QM  A   B
///       E3   A   B   C
///       E4   B   C   D
/// ```
///
/// The additive form is cell-for-cell equivalent to that table: within it,
/// every cell with s+e+c ≤ 6 is QM, 7 is A, 8 is B, 9 is C, and 10 is D.
/// The transcribed table itself is the oracle in the test suite.
pub fn compute_asil(rating: &Rating) -> Result<Asil, EngineError> {
    let Rating {
        severity: s,
        exposure: e,
        controllability: c,
    } = *rating;
    if s > 3 || e > 4 || c > 3 {
        return Err(EngineError::RatingOutOfRange {
            rating: rating.to_string(),
        });
    }
    if s == 0 || e == 0 || c == 0 {
        return Ok(Asil::Qm);
    }
    Ok(match s + e + c {
        0..=6 => Asil::Qm,
        7 => Asil::A,
        8 => Asil::B,
        9 => Asil::C,
        _ => Asil::D,
    })
}
