use super::{pointwise, HomError, HomRecord, HomSet};
use crate::table::Quandle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `f: R → S` sends `k ∈ Hom(S, T)` to `k ∘ f ∈ Hom(R, T)`.
    Pre,
    /// `f: T → U` sends `k ∈ Hom(S, T)` to `f ∘ k ∈ Hom(S, U)`.
    Post,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorialImage {
    pub homs: HomSet,
    /// `mapping[i]` is the index in `homs` of the image of input record `i`.
    pub mapping: Vec<usize>,
    /// Whether the induced map respects the pointwise operation; `None`
    /// unless the target quandles were supplied.
    pub respects_operation: Option<bool>,
}

impl FunctorialImage {
    pub fn is_injective(&self) -> bool {
        self.homs.len() == self.mapping.len()
    }
}

/// Applies pre- or post-composition with `f` to every record of `homs`.
///
/// `targets` are the quandles the input and output records map into (both
/// `T` for [`Direction::Pre`], `T` and `U` for [`Direction::Post`]); when
/// given, the induced map is checked against the pointwise operation on
/// all pairs.
pub fn compose_functorial(
    direction: Direction,
    f: &HomRecord,
    homs: &HomSet,
    targets: Option<(&Quandle, &Quandle)>,
) -> Result<FunctorialImage, HomError> {
    let (source_order, target_order) = match direction {
        Direction::Pre => {
            if let Some(&bad) = f.image.iter().find(|&&v| v >= homs.source_order()) {
                return Err(HomError::Incompatible(format!(
                    "f sends into {bad}, but Hom sources have order {}",
                    homs.source_order()
                )));
            }
            (f.source_order(), homs.target_order())
        }
        Direction::Post => {
            if f.source_order() != homs.target_order() {
                return Err(HomError::Incompatible(format!(
                    "f has domain of order {}, Hom targets have order {}",
                    f.source_order(),
                    homs.target_order()
                )));
            }
            let codomain = f.image.iter().max().map_or(0, |&m| m + 1);
            let codomain = targets.map_or(codomain, |(_, u)| u.order());
            (homs.source_order(), codomain)
        }
    };
    if let Some((t, u)) = targets {
        if t.order() != homs.target_order() || u.order() != target_order {
            return Err(HomError::Incompatible("target quandles do not match the Hom set".into()));
        }
    }

    let apply = |k: &HomRecord| -> HomRecord {
        match direction {
            Direction::Pre => HomRecord::new(f.image.iter().map(|&x| k.apply(x)).collect()),
            Direction::Post => HomRecord::new(k.image.iter().map(|&y| f.apply(y)).collect()),
        }
    };
    let images: Vec<HomRecord> = homs.records().iter().map(apply).collect();
    let out = HomSet::new(source_order, target_order, homs.engine(), images.clone());
    let mapping = images
        .iter()
        .map(|r| out.index_of(&r.image).expect("image was inserted"))
        .collect();

    let respects_operation = targets.map(|(t, u)| {
        let records = homs.records();
        records.iter().enumerate().all(|(a, h)| {
            records
                .iter()
                .enumerate()
                .all(|(b, k)| apply(&pointwise(t, h, k)) == pointwise(u, &images[a], &images[b]))
        })
    });
    Ok(FunctorialImage {
        homs: out,
        mapping,
        respects_operation,
    })
}
