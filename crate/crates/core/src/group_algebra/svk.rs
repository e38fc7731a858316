use super::presentation::Presentation;
use super::word::Word;
use crate::edge_group::{EdgeGroupData, EdgeLoop};
use crate::error::{Error, Result};
use crate::image_core::{DigitalImage, Point};

/// `⟨G₁ ⊔ G₂ | R₁ ∪ R₂⟩`, the generators of `q` renumbered after those of `p`.
pub fn free_product(p: &Presentation, q: &Presentation) -> Presentation {
    let offset = p.generator_count();
    let mut relators = p.relators().to_vec();
    relators.extend(q.relators().iter().map(|r| r.shifted(offset)));
    Presentation::new(offset + q.generator_count(), relators).expect("shifted words stay in range")
}

/// Amalgamated product: the free product plus one relator `w_U · w_V⁻¹` for
/// each pair, where the pair holds the images of a generator of the
/// intersection's group in the two parts.
pub fn svk_pushout(
    pu: &Presentation,
    pv: &Presentation,
    pairs: &[(Word, Word)],
) -> Result<Presentation> {
    let base = free_product(pu, pv);
    let offset = pu.generator_count();
    let mut relators = base.relators().to_vec();
    for (wu, wv) in pairs {
        pu.check_word(wu)?;
        pv.check_word(wv)?;
        relators.push(wu.concat(&wv.shifted(offset).inverse()));
    }
    Presentation::new(base.generator_count(), relators)
}

/// True iff no point of `V ∖ U` is adjacent to a point of `U ∖ V`.
pub fn disconnected_complements(u: &DigitalImage, v: &DigitalImage) -> Result<bool> {
    if u.dimension() != v.dimension() {
        return Err(Error::DimensionMismatch {
            expected: u.dimension(),
            found: v.dimension(),
        });
    }
    let only_u: Vec<_> = u.points().iter().filter(|p| !v.contains(p)).collect();
    let only_v: Vec<_> = v.points().iter().filter(|p| !u.contains(p)).collect();
    for a in &only_u {
        for b in &only_v {
            if crate::image_core::adjacent(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Two overlapping images glued along their intersection, with the pushout
/// of their edge-group presentations and the presentation of the union, all
/// based at the least common point.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub basepoint: Point,
    pub intersection: DigitalImage,
    pub pushout: Presentation,
    pub union: Presentation,
}

/// Checks the gluing hypotheses (disconnected complements, connected
/// nonempty intersection, connected parts) and builds the pushout.
pub fn glue_images(u: &DigitalImage, v: &DigitalImage) -> Result<Gluing> {
    if !disconnected_complements(u, v)? {
        return Err(Error::Precondition(
            "hypothesis violated: complements not disconnected".into(),
        ));
    }
    let common: Vec<Point> = u
        .points()
        .iter()
        .filter(|p| v.contains(p))
        .cloned()
        .collect();
    let Some(base) = common.first().cloned() else {
        return Err(Error::Precondition(
            "hypothesis violated: U and V do not meet".into(),
        ));
    };
    let uv = DigitalImage::from_points(common, &base)?;
    if !uv.is_connected() {
        return Err(Error::Precondition(
            "hypothesis violated: intersection is not connected".into(),
        ));
    }
    if !u.is_connected() || !v.is_connected() {
        return Err(Error::Precondition(
            "hypothesis violated: U or V is not connected".into(),
        ));
    }
    let u = u.with_basepoint(&base)?;
    let v = v.with_basepoint(&base)?;
    let mut union_points: Vec<Point> = u.points().iter().chain(v.points()).cloned().collect();
    union_points.sort();
    union_points.dedup();
    let whole = DigitalImage::from_points(union_points, &base)?;

    let du = EdgeGroupData::of_image(&u)?;
    let dv = EdgeGroupData::of_image(&v)?;
    let di = EdgeGroupData::of_image(&uv)?;
    let dw = EdgeGroupData::of_image(&whole)?;
    let carry = |data: &EdgeGroupData, target: &DigitalImage, l: &EdgeLoop| -> Result<Word> {
        let steps = l
            .vertices()
            .iter()
            .map(|&i| target.require(uv.point(i)))
            .collect::<Result<Vec<_>>>()?;
        data.word_of(&EdgeLoop::new(data.complex(), steps)?)
    };
    let mut pairs = Vec::new();
    for g in 0..di.tree().generator_count() {
        let l = di.tree().generator_loop(g)?;
        pairs.push((carry(&du, &u, &l)?, carry(&dv, &v, &l)?));
    }
    let pushout = svk_pushout(du.presentation(), dv.presentation(), &pairs)?;
    Ok(Gluing {
        basepoint: base,
        intersection: uv,
        pushout,
        union: dw.presentation().clone(),
    })
}
