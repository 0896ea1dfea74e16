use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::table::Quandle;

/// Structural properties decided by exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Trivial,
    Medial,
    TwoReductive,
    Latin,
    Connected,
    Involutory,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Trivial,
        Property::Medial,
        Property::TwoReductive,
        Property::Latin,
        Property::Connected,
        Property::Involutory,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Trivial => "trivial",
            Property::Medial => "medial",
            Property::TwoReductive => "two_reductive",
            Property::Latin => "latin",
            Property::Connected => "connected",
            Property::Involutory => "involutory",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown property {0:?}")]
pub struct UnknownProperty(pub String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "trivial" => Ok(Property::Trivial),
            "medial" => Ok(Property::Medial),
            "two_reductive" | "2_reductive" => Ok(Property::TwoReductive),
            "latin" => Ok(Property::Latin),
            "connected" => Ok(Property::Connected),
            "involutory" => Ok(Property::Involutory),
            _ => Err(UnknownProperty(s.to_string())),
        }
    }
}

/// Outcome of a property check; `witness` is empty when the property holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub holds: bool,
    pub witness: Vec<usize>,
}

impl PropertyCheck {
    fn holds() -> Self {
        Self {
            holds: true,
            witness: Vec::new(),
        }
    }

    fn fails(witness: Vec<usize>) -> Self {
        Self {
            holds: false,
            witness,
        }
    }
}

/// Checks `property` exhaustively. Failing witnesses are lexicographically
/// least.
///
/// Witness shapes: trivial `(x, y)`, medial `(x, y, z, w)`, two_reductive
/// `(x, y, z)`, latin `(y)`, connected `(x)` for the least element outside
/// the component of 0, involutory `(x, y)`.
pub fn check_property(q: &Quandle, property: Property) -> PropertyCheck {
    let n = q.order();
    let found = match property {
        Property::Trivial => pairs(n)
            .find(|&(x, y)| q.op(x, y) != y)
            .map(|(x, y)| vec![x, y]),
        Property::Medial => medial_witness(q),
        Property::TwoReductive => two_reductive_witness(q),
        Property::Latin => (0..n)
            .find(|&y| {
                let mut seen = vec![false; n];
                (0..n).any(|x| std::mem::replace(&mut seen[q.op(x, y)], true))
            })
            .map(|y| vec![y]),
        Property::Connected => {
            let comps = q.components();
            (0..n).find(|&x| !comps.related(0, x)).map(|x| vec![x])
        }
        Property::Involutory => pairs(n)
            .find(|&(x, y)| q.op(x, q.op(x, y)) != y)
            .map(|(x, y)| vec![x, y]),
    };
    match found {
        None => PropertyCheck::holds(),
        Some(w) => PropertyCheck::fails(w),
    }
}

pub fn has_property(q: &Quandle, property: Property) -> bool {
    check_property(q, property).holds
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// Mediality is equivalent to `L_y L_x⁻¹` and `L_z L_x⁻¹` commuting for
/// all `x, y, z`, hence to the maps `L_a L_0⁻¹` commuting pairwise (they
/// generate every `L_y L_x⁻¹`). Cubic, against quartic for the identity.
fn displacements_commute(q: &Quandle) -> bool {
    let n = q.order();
    let d: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|x| q.op(a, q.left_div(0, x))).collect())
        .collect();
    (0..n).all(|a| (a + 1..n).all(|b| (0..n).all(|x| d[a][d[b][x]] == d[b][d[a][x]])))
}

fn medial_witness(q: &Quandle) -> Option<Vec<usize>> {
    if displacements_commute(q) {
        return None;
    }
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            let xy = q.op(x, y);
            for z in 0..n {
                let xz = q.op(x, z);
                for w in 0..n {
                    if q.op(xy, q.op(z, w)) != q.op(xz, q.op(y, w)) {
                        return Some(vec![x, y, z, w]);
                    }
                }
            }
        }
    }
    None
}

pub(crate) fn two_reductive_witness(q: &Quandle) -> Option<Vec<usize>> {
    let n = q.order();
    for x in 0..n {
        for y in 0..n {
            let xy = q.op(x, y);
            for z in 0..n {
                if q.op(xy, z) != q.op(y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}
