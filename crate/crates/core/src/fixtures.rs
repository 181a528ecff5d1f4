//! Reference divides used in tests, docs and the CLI fixture files.

use crate::divide::{Crossing, Divide, WallItem::*};

/// Two end points on the left, a positive crossing, a maximum on the right.
pub fn trefoil() -> Divide {
    Divide::new(vec![Endpoint, Endpoint], vec![Crossing::plus(1)], vec![TurnBack]).with_name("trefoil")
}

/// Minimum and end point on both walls around a negative crossing.
pub fn figure_eight() -> Divide {
    Divide::new(vec![TurnBack, Endpoint], vec![Crossing::minus(2)], vec![TurnBack, Endpoint])
        .with_name("figure-eight")
}

/// A single strand with no singular points.
pub fn unknot_arc() -> Divide {
    Divide::new(vec![Endpoint], vec![], vec![Endpoint]).with_name("unknot")
}

pub fn all() -> Vec<Divide> {
    vec![trefoil(), figure_eight(), unknot_arc()]
}
