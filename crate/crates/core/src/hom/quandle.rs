use super::{enumerate_homs, HomError, HomRecord, HomSet};
use crate::property::{check_property, Property};
use crate::table::Quandle;

/// `(h ▷ k)(a) = h(a) ▷ k(a)`.
pub fn pointwise(t: &Quandle, h: &HomRecord, k: &HomRecord) -> HomRecord {
    HomRecord::new(
        h.image
            .iter()
            .zip(&k.image)
            .map(|(&a, &b)| t.op(a, b))
            .collect(),
    )
}

/// `Hom(S, T)` as a quandle under the pointwise operation; element `i` of
/// the table is `records()[i]` of the returned set.
pub fn hom_quandle(s: &Quandle, t: &Quandle) -> Result<(Quandle, HomSet), HomError> {
    require_medial(t)?;
    let homs = enumerate_homs(s, t)?;
    let q = hom_quandle_from_set(t, &homs)?;
    Ok((q, homs))
}

/// The pointwise quandle on an already computed Hom set.
pub fn hom_quandle_from_set(t: &Quandle, homs: &HomSet) -> Result<Quandle, HomError> {
    require_medial(t)?;
    if homs.target_order() != t.order() {
        return Err(HomError::Incompatible(format!(
            "Hom set targets order {}, quandle has order {}",
            homs.target_order(),
            t.order()
        )));
    }
    let records = homs.records();
    let n = records.len();
    let mut table = Vec::with_capacity(n * n);
    for h in records {
        for k in records {
            let hk = pointwise(t, h, k);
            let idx = homs.index_of(&hk.image).ok_or_else(|| {
                HomError::Inconsistent("Hom set is not closed under the pointwise operation".into())
            })?;
            table.push(idx);
        }
    }
    Ok(Quandle::from_flat_unchecked(n, table))
}

fn require_medial(t: &Quandle) -> Result<(), HomError> {
    let check = check_property(t, Property::Medial);
    if check.holds {
        Ok(())
    } else {
        Err(HomError::TargetNotMedial {
            witness: check.witness,
        })
    }
}
