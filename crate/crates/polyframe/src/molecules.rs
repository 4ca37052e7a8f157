//! Oriented graded posets from f-orientations, generalized sources and
//! targets, input/output boundaries of closed subsets, layerings from line
//! shellings, molecule verification, and the regular-directed-complex
//! checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::traits::Zero;

use crate::error::Error;
use crate::exact::{self, rat, RVec, Rat};
use crate::framing::{f_orientation, FOrientation, Frame, FramedPolytope};
use crate::polytope::{self, FaceId, FaceLattice, Label, PointConfig};

/// A face lattice with a sign on every cover relation, including the covers
/// of the empty face.
#[derive(Clone, Debug)]
pub struct OrientedGradedPoset {
    pub lattice: FaceLattice,
    /// sign per cover pair (facet, face)
    pub labels: HashMap<(FaceId, FaceId), i8>,
}

/// A downward-closed set of faces (always containing the empty face).
pub type ClosedSubset = BTreeSet<FaceId>;

impl OrientedGradedPoset {
    pub fn label(&self, sub: FaceId, sup: FaceId) -> i8 {
        self.labels[&(sub, sup)]
    }

    /// Downward closure of a set of faces.
    pub fn closure(&self, faces: &[FaceId]) -> ClosedSubset {
        let mut out = ClosedSubset::new();
        out.insert(self.lattice.empty);
        let mut stack: Vec<FaceId> = faces.to_vec();
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(self.lattice.covers_down[f].iter().copied());
            }
        }
        out
    }

    pub fn is_closed(&self, set: &ClosedSubset) -> bool {
        set.contains(&self.lattice.empty)
            && set
                .iter()
                .all(|&f| self.lattice.covers_down[f].iter().all(|d| set.contains(d)))
    }

    /// Maximal elements of a closed subset.
    pub fn maximal(&self, set: &ClosedSubset) -> Vec<FaceId> {
        set.iter()
            .copied()
            .filter(|&f| self.lattice.covers_up[f].iter().all(|u| !set.contains(u)))
            .collect()
    }

    pub fn dim_of_subset(&self, set: &ClosedSubset) -> i64 {
        set.iter().map(|&f| self.lattice.faces[f].dim).max().unwrap_or(-1)
    }

    /// k-faces of the closed subset whose covers inside it all carry the
    /// given sign.
    fn k_extreme(&self, set: &ClosedSubset, k: i64, sign: i8) -> Vec<FaceId> {
        set.iter()
            .copied()
            .filter(|&f| self.lattice.faces[f].dim == k)
            .filter(|&f| {
                self.lattice.covers_up[f]
                    .iter()
                    .filter(|u| set.contains(u))
                    .all(|&u| self.label(f, u) == sign)
            })
            .collect()
    }

    pub fn k_source(&self, set: &ClosedSubset, k: i64) -> Vec<FaceId> {
        self.k_extreme(set, k, -1)
    }

    pub fn k_target(&self, set: &ClosedSubset, k: i64) -> Vec<FaceId> {
        self.k_extreme(set, k, 1)
    }

    /// Input and output k-boundaries of a closed subset.
    pub fn boundaries(&self, set: &ClosedSubset, k: i64) -> (ClosedSubset, ClosedSubset) {
        let low: Vec<FaceId> = self
            .maximal(set)
            .into_iter()
            .filter(|&f| self.lattice.faces[f].dim < k)
            .collect();
        let mut source = self.k_source(set, k);
        source.extend(low.iter().copied());
        let mut target = self.k_target(set, k);
        target.extend(low.iter().copied());
        (self.closure(&source), self.closure(&target))
    }

    /// Top-level boundaries `bso(U) = bso_{dim U - 1}(U)`.
    pub fn top_boundaries(&self, set: &ClosedSubset) -> (ClosedSubset, ClosedSubset) {
        let d = self.dim_of_subset(set);
        self.boundaries(set, d - 1)
    }

    pub fn atom(&self, face: FaceId) -> ClosedSubset {
        self.closure(&[face])
    }
}

/// Signs per the frame convention: sources get -, targets and the covers of
/// the empty face get +.
pub fn poset_orientation(
    lattice: &FaceLattice,
    orient: &FOrientation,
) -> Result<OrientedGradedPoset, Error> {
    let mut labels = HashMap::new();
    for (g, downs) in lattice.covers_down.iter().enumerate() {
        for &f in downs {
            let sign = if f == lattice.empty {
                1
            } else {
                let key = &lattice.faces[g].vertices;
                let (so, _ta) = orient
                    .faces
                    .get(key)
                    .ok_or_else(|| Error::Parameter(format!("orientation misses face {key:?}")))?;
                if so.contains(&lattice.faces[f].vertices) {
                    -1
                } else {
                    1
                }
            };
            labels.insert((f, g), sign);
        }
    }
    let ogp = OrientedGradedPoset { lattice: lattice.clone(), labels };
    validate_thin_grounded(&ogp)?;
    Ok(ogp)
}

/// Thinness on every diamond plus groundedness at the empty face.
pub fn validate_thin_grounded(ogp: &OrientedGradedPoset) -> Result<(), Error> {
    let lattice = &ogp.lattice;
    for v in lattice.faces_of_dim(0) {
        if ogp.label(lattice.empty, *v) != 1 {
            return Err(Error::NotThin {
                bottom: vec![],
                top: lattice.faces[*v].vertices.clone(),
            });
        }
    }
    for g in 0..lattice.faces.len() {
        for &f in &lattice.covers_down[g] {
            for &e in &lattice.covers_down[f] {
                let between: Vec<FaceId> = lattice.covers_down[g]
                    .iter()
                    .copied()
                    .filter(|&m| lattice.covers_down[m].contains(&e))
                    .collect();
                if between.len() != 2 {
                    return Err(Error::Degenerate(format!(
                        "diamond property fails between {:?} and {:?}",
                        lattice.faces[e].vertices, lattice.faces[g].vertices
                    )));
                }
                let (m1, m2) = (between[0], between[1]);
                let prod1 = ogp.label(e, m1) * ogp.label(m1, g);
                let prod2 = ogp.label(e, m2) * ogp.label(m2, g);
                if prod1 != -prod2 {
                    return Err(Error::NotThin {
                        bottom: lattice.faces[e].vertices.clone(),
                        top: lattice.faces[g].vertices.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Inverse of [`poset_orientation`]: reads the facet partitions back off the
/// cover signs, after validating thinness and groundedness.
pub fn reconstruct(ogp: &OrientedGradedPoset) -> Result<FOrientation, Error> {
    validate_thin_grounded(ogp)?;
    let lattice = &ogp.lattice;
    let mut faces = BTreeMap::new();
    for g in 0..lattice.faces.len() {
        if lattice.faces[g].dim < 1 {
            continue;
        }
        let mut so = Vec::new();
        let mut ta = Vec::new();
        for &f in &lattice.covers_down[g] {
            if ogp.label(f, g) == -1 {
                so.push(lattice.faces[f].vertices.clone());
            } else {
                ta.push(lattice.faces[f].vertices.clone());
            }
        }
        so.sort();
        ta.sort();
        faces.insert(lattice.faces[g].vertices.clone(), (so, ta));
    }
    Ok(FOrientation { faces, grounded: true })
}

/// Generalized k-source and k-target of a face under a frame that need not
/// be admissible: the cells are the preimages of the non-vertical facets of
/// the projected face and may exceed dimension k. Returns vertex label sets
/// `(sources, targets)`.
pub fn generalized_k_st(
    cfg: &PointConfig,
    frame: &Frame,
    face_vertices: &[Label],
    k: i64,
) -> Result<(Vec<Vec<Label>>, Vec<Vec<Label>>), Error> {
    let take = (k + 1) as usize;
    let coords: Vec<(Label, RVec)> = face_vertices
        .iter()
        .map(|&l| (l, frame.coords(cfg.point(l)).truncate(take)))
        .collect();
    let points: Vec<RVec> = coords.iter().map(|(_, c)| c.clone()).collect();
    if polytope::affine_rank(&points) as i64 != k + 1 {
        return Err(Error::Scope(format!(
            "projection of face {face_vertices:?} is not ({})-dimensional",
            k + 1
        )));
    }
    let mut distinct: Vec<RVec> = Vec::new();
    for p in &points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    let proj_cfg = PointConfig::new(take, distinct)?;
    let (hull, _) = polytope::hull_vertices(&proj_cfg)?;
    let facets = polytope::facets(&hull)?;
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for facet in &facets {
        let pts: Vec<RVec> = facet.vertices.iter().map(|&l| hull.point(l).clone()).collect();
        let mut normal = exact::affine_hyperplane_normal(&pts, take)
            .ok_or_else(|| Error::Degenerate("projected facet does not span a hyperplane".into()))?;
        let level = normal.dot(&pts[0]);
        let witness = hull
            .points
            .iter()
            .map(|p| normal.dot(p))
            .find(|v| *v != level)
            .ok_or_else(|| Error::Degenerate("flat projected polytope".into()))?;
        if witness > level {
            normal = normal.scale(&rat(-1));
        }
        let level = normal.dot(&pts[0]);
        let pairing = &normal[take - 1];
        if pairing.is_zero() {
            continue; // vertical facet: neither source nor target
        }
        let members: Vec<Label> = coords
            .iter()
            .filter(|(_, c)| normal.dot(c) == level)
            .map(|(l, _)| *l)
            .collect();
        if *pairing < Rat::zero() {
            sources.push(members);
        } else {
            targets.push(members);
        }
    }
    sources.sort();
    targets.sort();
    Ok((sources, targets))
}

/// Which half of the extended boundary a layering covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StSide {
    Source,
    Target,
}

/// An ordered decomposition of `bso_k(face)` or `bta_k(face)` into layers
/// glued along matching (k-1)-boundaries.
#[derive(Clone, Debug)]
pub struct Layering {
    pub face: FaceId,
    pub k: i64,
    pub side: StSide,
    /// the k-cells in shelling order
    pub order: Vec<FaceId>,
    /// exact shelling parameters, parallel to `order`
    pub lambdas: Vec<Rat>,
    /// the layers whose union is the boundary
    pub layers: Vec<ClosedSubset>,
    /// gluing witnesses: prefix /\ next layer, per consecutive pair
    pub gluings: Vec<ClosedSubset>,
}

/// The shelling parameter of a k-cell: ratio of the normal pairings with
/// `v_k` and `v_{k+1}`, computed on the projected facet hyperplane.
fn lambda_of(fp: &FramedPolytope, face: FaceId, cell: FaceId, k: i64) -> Result<Rat, Error> {
    let take = (k + 1) as usize;
    let vertices = &fp.lattice.faces[cell].vertices;
    let coord = |l: Label| {
        let idx = fp.cfg.index_of(l).expect("label");
        fp.coords[idx].truncate(take)
    };
    // affinely independent spanning subset of the projected cell
    let mut basis: Vec<RVec> = Vec::new();
    for &v in vertices {
        let cand = coord(v);
        let mut trial = basis.clone();
        trial.push(cand.clone());
        if polytope::affine_rank(&trial) == trial.len() - 1 {
            basis.push(cand);
        }
        if basis.len() == take {
            break;
        }
    }
    if basis.len() != take {
        return Err(Error::Degenerate("projected cell does not span a hyperplane".into()));
    }
    let mut normal = exact::affine_hyperplane_normal(&basis, take)
        .ok_or_else(|| Error::Degenerate("projected cell normal is not unique".into()))?;
    let level = normal.dot(&basis[0]);
    // orient outward with respect to the projected face
    let outside = fp.lattice.faces[face]
        .vertices
        .iter()
        .map(|&l| normal.dot(&coord(l)))
        .find(|v| *v != level);
    if let Some(v) = outside {
        if v > level {
            normal = normal.scale(&rat(-1));
        }
    }
    let denom = normal[take - 1].clone();
    if denom.is_zero() {
        return Err(Error::NotAdmissible {
            face: vertices.clone(),
            dim: fp.lattice.faces[cell].dim,
            level: take,
        });
    }
    Ok(&normal[take - 2] / &denom)
}

/// Perturbs the k-th frame vector by an exact rational jitter until all
/// shelling parameters are distinct, keeping previously distinct parameters
/// in the same order and every source/target table unchanged.
fn perturbed_for_distinct_lambdas(
    fp: &FramedPolytope,
    face: FaceId,
    k: i64,
) -> Result<(Vec<(FaceId, Rat)>, Vec<(FaceId, Rat)>), Error> {
    let entry = fp.st_entry(face, k)?;
    let lam = |fp2: &FramedPolytope| -> Result<Vec<(FaceId, Rat)>, Error> {
        entry
            .source
            .iter()
            .chain(entry.target.iter())
            .map(|&c| Ok((c, lambda_of(fp2, face, c, k)?)))
            .collect()
    };
    let base = lam(fp)?;
    // distinctness matters per side: a source facet parallel to a target
    // facet shares its parameter forever, and the orders never compare them
    let side_distinct = |xs: &[(FaceId, Rat)], side: &[FaceId]| {
        let mut seen: Vec<&Rat> = Vec::new();
        for (c, l) in xs {
            if !side.contains(c) {
                continue;
            }
            if seen.contains(&l) {
                return false;
            }
            seen.push(l);
        }
        true
    };
    let all_distinct = |xs: &[(FaceId, Rat)]| {
        side_distinct(xs, &entry.source) && side_distinct(xs, &entry.target)
    };
    let same_side = |a: FaceId, b: FaceId| {
        (entry.source.contains(&a) && entry.source.contains(&b))
            || (entry.target.contains(&a) && entry.target.contains(&b))
    };
    let split = |xs: Vec<(FaceId, Rat)>| {
        let sources: Vec<(FaceId, Rat)> =
            xs.iter().filter(|(c, _)| entry.source.contains(c)).cloned().collect();
        let targets: Vec<(FaceId, Rat)> =
            xs.into_iter().filter(|(c, _)| entry.target.contains(c)).collect();
        (sources, targets)
    };
    if all_distinct(&base) {
        return Ok(split(base));
    }
    let d = fp.cfg.ambient_dim;
    let ku = k as usize;
    let orientation_of = |fp2: &FramedPolytope| f_orientation(fp2);
    let reference = orientation_of(fp)?;
    for t in 1..=16i64 {
        // jitter direction in frame coordinates, orthogonal slot at v_{k+1}
        let mut w = vec![Rat::zero(); d];
        let mut pow = rat(1);
        for (i, slot) in w.iter_mut().enumerate() {
            if i != ku {
                *slot = pow.clone();
            }
            pow *= rat(t);
        }
        let mut delta = rat(1);
        for _ in 0..64 {
            delta /= rat(2);
            let mut vectors = fp.frame.vectors().to_vec();
            let mut jitter = RVec::zeros(d);
            for (i, c) in w.iter().enumerate() {
                jitter = jitter.add(&fp.frame.vectors()[i].scale(&(c * &delta)));
            }
            vectors[ku - 1] = vectors[ku - 1].add(&jitter);
            let frame = match Frame::new(vectors) {
                Ok(f) => f,
                Err(_) => continue,
            };
            let fp2 = match FramedPolytope::with_lattice(
                fp.cfg.clone(),
                fp.lattice.clone(),
                frame,
            ) {
                Ok(fp2) => fp2,
                Err(_) => continue,
            };
            if !fp2.is_admissible().is_admissible() {
                continue;
            }
            // the perturbation must not move any source/target table
            match orientation_of(&fp2) {
                Ok(o) if crate::framing::f_orientation_equal(&o, &reference) => {}
                _ => continue,
            }
            let jittered = match lam(&fp2) {
                Ok(xs) => xs,
                Err(_) => continue,
            };
            // previously distinct same-side parameters must keep their order
            let mut order_ok = true;
            'pairs: for i in 0..base.len() {
                for j in i + 1..base.len() {
                    if !same_side(base[i].0, base[j].0) {
                        continue;
                    }
                    let (ref a, ref b) = (&base[i].1, &base[j].1);
                    if a != b {
                        let (na, nb) = (&jittered[i].1, &jittered[j].1);
                        if (a < b) != (na < nb) {
                            order_ok = false;
                            break 'pairs;
                        }
                    }
                }
            }
            if order_ok && all_distinct(&jittered) {
                return Ok(split(jittered));
            }
        }
    }
    Err(Error::Internal("could not break shelling-parameter ties".into()))
}

/// Builds and verifies the (k-1)-layering of `bso_k(face)` or `bta_k(face)`
/// from the line-shelling order: sources by decreasing parameter, targets by
/// increasing parameter. Verification failures are surfaced loudly since
/// they would contradict the layering theorem.
pub fn layering(
    fp: &FramedPolytope,
    ogp: &OrientedGradedPoset,
    face: FaceId,
    k: i64,
    side: StSide,
) -> Result<Layering, Error> {
    fp.require_admissible()?;
    let (order, lambdas): (Vec<FaceId>, Vec<Rat>) = if k == 0 {
        // the 0-source and 0-target are single vertices; nothing to order
        let entry = fp.st_entry(face, 0)?;
        let cells = match side {
            StSide::Source => entry.source,
            StSide::Target => entry.target,
        };
        (cells, Vec::new())
    } else {
        let (mut sources, mut targets) = perturbed_for_distinct_lambdas(fp, face, k)?;
        sources.sort_by(|a, b| b.1.cmp(&a.1)); // decreasing
        targets.sort_by(|a, b| a.1.cmp(&b.1)); // increasing
        let picked = match side {
            StSide::Source => sources,
            StSide::Target => targets,
        };
        picked.into_iter().unzip()
    };

    let atom = ogp.atom(face);
    let (expected, start) = {
        let (bso, bta) = ogp.boundaries(&atom, k);
        let expected = match side {
            StSide::Source => bso,
            StSide::Target => bta,
        };
        let start: ClosedSubset = if k == 0 {
            let mut s = ClosedSubset::new();
            s.insert(ogp.lattice.empty);
            s
        } else {
            ogp.boundaries(&atom, k - 1).0
        };
        (expected, start)
    };

    let mut layers = Vec::new();
    let mut gluings = Vec::new();
    let mut prefix = start.clone();
    for (i, &cell) in order.iter().enumerate() {
        let cell_closure = ogp.atom(cell);
        let layer: ClosedSubset = if i == 0 {
            prefix.union(&cell_closure).copied().collect()
        } else {
            let (_, bta_prefix) = ogp.boundaries(&prefix, k - 1);
            let layer: ClosedSubset = bta_prefix.union(&cell_closure).copied().collect();
            // gluing conditions: prefix /\ layer = bta_{k-1}(prefix) = bso_{k-1}(layer)
            let inter: ClosedSubset = prefix.intersection(&layer).copied().collect();
            if inter != bta_prefix {
                return Err(Error::Internal(format!(
                    "layering gluing failed at layer {i}: intersection differs from the output boundary of the prefix"
                )));
            }
            let (bso_layer, _) = ogp.boundaries(&layer, k - 1);
            if inter != bso_layer {
                return Err(Error::Internal(format!(
                    "layering gluing failed at layer {i}: intersection differs from the input boundary of the layer"
                )));
            }
            gluings.push(inter);
            layer
        };
        prefix = prefix.union(&layer).copied().collect();
        layers.push(layer);
    }
    if prefix != expected && !order.is_empty() {
        return Err(Error::Internal(
            "layer union differs from the extended boundary".into(),
        ));
    }
    Ok(Layering { face, k, side, order, lambdas, layers, gluings })
}

/// Brute-force molecule test by the recursive gluing definition, memoized;
/// only for small closed subsets.
pub fn is_molecule(ogp: &OrientedGradedPoset, set: &ClosedSubset) -> Result<bool, Error> {
    let max_count = ogp.maximal(set).len();
    if max_count > 12 {
        return Err(Error::Budget(format!(
            "molecule search is capped at 12 maximal faces, got {max_count}"
        )));
    }
    let mut memo = HashMap::new();
    Ok(molecule_rec(ogp, set, &mut memo))
}

fn molecule_rec(
    ogp: &OrientedGradedPoset,
    set: &ClosedSubset,
    memo: &mut HashMap<Vec<FaceId>, bool>,
) -> bool {
    let key: Vec<FaceId> = set.iter().copied().collect();
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let maximal = ogp.maximal(set);
    if maximal.len() == 1 {
        memo.insert(key, true);
        return true;
    }
    let dim = ogp.dim_of_subset(set);
    let mut result = false;
    'outer: for k in 0..=dim.max(0) {
        let high: Vec<FaceId> =
            maximal.iter().copied().filter(|&f| ogp.lattice.faces[f].dim > k).collect();
        let low: Vec<FaceId> =
            maximal.iter().copied().filter(|&f| ogp.lattice.faces[f].dim <= k).collect();
        if high.is_empty() {
            continue;
        }
        // maximal faces above level k split exclusively; the rest may sit on
        // either side or the gluing region
        for mask in 0..(1u32 << high.len()) {
            let left: Vec<FaceId> =
                high.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &f)| f).collect();
            let right: Vec<FaceId> =
                high.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &f)| f).collect();
            if left.is_empty() || right.is_empty() {
                continue;
            }
            for low_mask in 0..(3u32.pow(low.len() as u32)) {
                let mut l1 = left.clone();
                let mut l2 = right.clone();
                let mut m = low_mask;
                for &f in &low {
                    match m % 3 {
                        0 => l1.push(f),
                        1 => l2.push(f),
                        _ => {
                            l1.push(f);
                            l2.push(f);
                        }
                    }
                    m /= 3;
                }
                let mut u1 = ogp.closure(&l1);
                let mut u2 = ogp.closure(&l2);
                // a layer may pick up boundary pieces of its partner that are
                // maximal in neither; grow both sides to the gluing fixpoint
                loop {
                    let (_, bta1) = ogp.boundaries(&u1, k);
                    let u2_next: ClosedSubset = u2.union(&bta1).copied().collect();
                    let (bso2, _) = ogp.boundaries(&u2_next, k);
                    let u1_next: ClosedSubset = u1.union(&bso2).copied().collect();
                    if u1_next == u1 && u2_next == u2 {
                        break;
                    }
                    u1 = u1_next;
                    u2 = u2_next;
                }
                if u1.len() == set.len() || u2.len() == set.len() {
                    continue; // gluing halves must be proper
                }
                if u1.union(&u2).count() != set.len() {
                    continue;
                }
                let inter: ClosedSubset = u1.intersection(&u2).copied().collect();
                let (_, bta1) = ogp.boundaries(&u1, k);
                if inter != bta1 {
                    continue;
                }
                let (bso2, _) = ogp.boundaries(&u2, k);
                if inter != bso2 {
                    continue;
                }
                if molecule_rec(ogp, &u1, memo) && molecule_rec(ogp, &u2, memo) {
                    result = true;
                    break 'outer;
                }
            }
        }
    }
    memo.insert(key, result);
    result
}

/// Outcome of the regular-directed-complex verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdcReport {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Checks the three regular-directed-complex conditions on every face:
/// boundary molecules (certified by layerings), globular identities, and
/// the boundary-intersection identity.
pub fn rdc_check(fp: &FramedPolytope) -> Result<RdcReport, Error> {
    fp.require_admissible()?;
    let orient = f_orientation(fp)?;
    let ogp = poset_orientation(&fp.lattice, &orient)?;
    let mut failures = Vec::new();
    for face in 0..fp.lattice.faces.len() {
        let e = fp.lattice.faces[face].dim;
        if e < 1 {
            continue;
        }
        let name = || format!("{:?}", fp.lattice.faces[face].vertices);
        // (1) bso_k(F) and bta_k(F) are molecules: layering certificates at
        // every level
        for k in 0..e {
            for side in [StSide::Source, StSide::Target] {
                if let Err(err) = layering(fp, &ogp, face, k, side) {
                    failures.push(format!(
                        "face {} level {k} {side:?}: layering failed: {err}",
                        name()
                    ));
                }
            }
        }
        let atom = ogp.atom(face);
        // (2) globular identities
        if e > 1 {
            let (bso, bta) = ogp.top_boundaries(&atom);
            let (ss, st) = ogp.top_boundaries(&bso);
            let (ts, tt) = ogp.top_boundaries(&bta);
            if ss != ts {
                failures.push(format!("face {}: bso(bta) != bso(bso)", name()));
            }
            if st != tt {
                failures.push(format!("face {}: bta(bso) != bta(bta)", name()));
            }
        }
        // (3) boundary intersections step down by one level
        for k in 0..e {
            let (bso_k, bta_k) = ogp.boundaries(&atom, k);
            let inter: ClosedSubset = bso_k.intersection(&bta_k).copied().collect();
            let expected: ClosedSubset = if k == 0 {
                let mut s = ClosedSubset::new();
                s.insert(ogp.lattice.empty);
                s
            } else {
                let (lo_s, lo_t) = ogp.boundaries(&atom, k - 1);
                lo_s.union(&lo_t).copied().collect()
            };
            if inter != expected {
                failures.push(format!(
                    "face {} level {k}: bso /\\ bta differs from the level below",
                    name()
                ));
            }
        }
    }
    Ok(RdcReport { passed: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::framing::f_orientation_equal;
    use crate::polytope::{face_lattice, make_family, p5_config, FamilySpec};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn framed(cfg: PointConfig, frame: Frame) -> FramedPolytope {
        FramedPolytope::new(cfg, frame).unwrap()
    }

    fn ogp_of(fp: &FramedPolytope) -> OrientedGradedPoset {
        poset_orientation(&fp.lattice, &f_orientation(fp).unwrap()).unwrap()
    }

    #[test]
    fn triangle_poset_orientation_signs() {
        // the 2-simplex of the worked example: apex above the base edge
        let tri = PointConfig::new(
            2,
            vec![RVec::from_i64(&[-1, 0]), RVec::from_i64(&[1, 0]), RVec::from_i64(&[0, 2])],
        )
        .unwrap();
        let fp = framed(tri, Frame::canonical(2));
        let ogp = ogp_of(&fp);
        let lat = &fp.lattice;
        let id = |vs: &[Label]| lat.id_of(vs).unwrap();
        let top = id(&[1, 2, 3]);
        assert_eq!(ogp.label(id(&[1, 2]), top), -1);
        assert_eq!(ogp.label(id(&[1, 3]), top), 1);
        assert_eq!(ogp.label(id(&[2, 3]), top), 1);
        assert_eq!(ogp.label(id(&[1]), id(&[1, 2])), -1);
        assert_eq!(ogp.label(id(&[2]), id(&[1, 2])), 1);
        assert_eq!(ogp.label(id(&[1]), id(&[1, 3])), -1);
        assert_eq!(ogp.label(id(&[3]), id(&[1, 3])), 1);
        assert_eq!(ogp.label(id(&[3]), id(&[2, 3])), -1);
        assert_eq!(ogp.label(id(&[2]), id(&[2, 3])), 1);
        assert_eq!(ogp.label(lat.empty, id(&[1])), 1);
    }

    #[test]
    fn reconstruct_round_trips_on_corpus() {
        let configs: Vec<FramedPolytope> = vec![
            framed(p5_config(), Frame::canonical(5)),
            framed(
                make_family(&FamilySpec::CyclicPolytope { n: 6, d: 3, ts: None }).unwrap(),
                Frame::canonical(3),
            ),
            framed(
                make_family(&FamilySpec::CyclicZonotope { n: 3, d: 3, ts: None }).unwrap(),
                Frame::canonical(3),
            ),
        ];
        for fp in &configs {
            let orient = f_orientation(fp).unwrap();
            let ogp = poset_orientation(&fp.lattice, &orient).unwrap();
            let back = reconstruct(&ogp).unwrap();
            assert!(f_orientation_equal(&orient, &back));
        }
    }

    #[test]
    fn flipped_label_breaks_thinness() {
        let tri = PointConfig::new(
            2,
            vec![RVec::from_i64(&[-1, 0]), RVec::from_i64(&[1, 0]), RVec::from_i64(&[0, 2])],
        )
        .unwrap();
        let fp = framed(tri, Frame::canonical(2));
        let mut ogp = ogp_of(&fp);
        let id = |vs: &[Label]| fp.lattice.id_of(vs).unwrap();
        let key = (id(&[1]), id(&[1, 2]));
        let old = ogp.labels[&key];
        ogp.labels.insert(key, -old);
        assert!(matches!(reconstruct(&ogp), Err(Error::NotThin { .. })));
    }

    #[test]
    fn boundaries_of_atoms_and_segments() {
        let seg = PointConfig::new(1, vec![RVec::from_i64(&[0]), RVec::from_i64(&[3])]).unwrap();
        let fp = framed(seg, Frame::canonical(1));
        let ogp = ogp_of(&fp);
        let atom = ogp.atom(fp.lattice.top);
        let (bso, bta) = ogp.boundaries(&atom, 0);
        let left = fp.lattice.id_of(&[1]).unwrap();
        let right = fp.lattice.id_of(&[2]).unwrap();
        assert_eq!(bso, ogp.atom(left));
        assert_eq!(bta, ogp.atom(right));

        // a k-face's own k-boundary is the whole atom
        let (bsok, btak) = ogp.boundaries(&ogp.atom(left), 0);
        assert_eq!(bsok, ogp.atom(left));
        assert_eq!(btak, ogp.atom(left));
    }

    #[test]
    fn iterated_boundaries_match_direct_ones() {
        let fp = framed(p5_config(), Frame::canonical(5));
        let ogp = ogp_of(&fp);
        let atom = ogp.atom(fp.lattice.top);
        for k in 0..5 {
            let (direct_s, direct_t) = ogp.boundaries(&atom, k);
            // iterate top boundaries down to level k
            let mut s = atom.clone();
            let mut t = atom.clone();
            for level in (k..5).rev() {
                s = ogp.boundaries(&s, level).0;
                t = ogp.boundaries(&t, level).1;
            }
            assert_eq!(s, direct_s, "k={k}");
            assert_eq!(t, direct_t, "k={k}");
        }
    }

    #[test]
    fn generalized_matches_admissible_tables() {
        let fp = framed(p5_config(), Frame::canonical(5));
        for dim in 1..=5i64 {
            for &f in fp.lattice.faces_of_dim(dim) {
                for k in 0..dim {
                    let (gs, gt) = generalized_k_st(
                        &fp.cfg,
                        &fp.frame,
                        &fp.lattice.faces[f].vertices,
                        k,
                    )
                    .unwrap();
                    let entry = fp.st_entry(f, k).unwrap();
                    let mut es: Vec<Vec<Label>> = entry
                        .source
                        .iter()
                        .map(|&id| fp.lattice.faces[id].vertices.clone())
                        .collect();
                    let mut et: Vec<Vec<Label>> = entry
                        .target
                        .iter()
                        .map(|&id| fp.lattice.faces[id].vertices.clone())
                        .collect();
                    es.sort();
                    et.sort();
                    assert_eq!(gs, es);
                    assert_eq!(gt, et);
                }
            }
        }
    }

    #[test]
    fn generalized_handles_vertical_edges() {
        // square with v2 parallel to an edge: the edge shows up whole inside
        // a generalized 0-target
        let square = PointConfig::new(
            2,
            vec![
                RVec::from_i64(&[0, 0]),
                RVec::from_i64(&[2, 1]),
                RVec::from_i64(&[0, 3]),
                RVec::from_i64(&[2, 4]),
            ],
        )
        .unwrap();
        // v1 = e1 + small tilt so pi_1 is injective on edges; v2 = e2
        let frame = Frame::new(vec![
            RVec::new(vec![rat(1), ratio(1, 5)]),
            RVec::from_i64(&[0, 1]),
        ])
        .unwrap();
        let (s, t) = generalized_k_st(&square, &frame, &[1, 2, 3, 4], 0).unwrap();
        // frame coords: B^{-1} p; the edge {1,3} is parallel to v2
        assert!(s.len() + t.len() >= 2);
        assert!(
            s.iter().chain(t.iter()).any(|cell| cell.len() == 2),
            "a whole edge appears in a generalized boundary: {s:?} {t:?}"
        );
    }

    #[test]
    fn generalized_on_segment() {
        let seg = PointConfig::new(1, vec![RVec::from_i64(&[0]), RVec::from_i64(&[2])]).unwrap();
        let frame = Frame::canonical(1);
        let (s, t) = generalized_k_st(&seg, &frame, &[1, 2], 0).unwrap();
        assert_eq!(s, vec![vec![1]]);
        assert_eq!(t, vec![vec![2]]);
    }

    #[test]
    fn square_target_layering() {
        let square = PointConfig::new(
            2,
            vec![
                RVec::from_i64(&[0, 0]),
                RVec::from_i64(&[3, 1]),
                RVec::from_i64(&[5, 4]),
                RVec::from_i64(&[1, 3]),
            ],
        )
        .unwrap();
        let fp = framed(square, Frame::canonical(2));
        let ogp = ogp_of(&fp);
        let lay = layering(&fp, &ogp, fp.lattice.top, 1, StSide::Target).unwrap();
        assert_eq!(lay.layers.len(), 2);
        assert_eq!(lay.gluings.len(), 1);
        // the gluing is a single shared vertex (plus the empty face)
        let shared: Vec<FaceId> = lay.gluings[0]
            .iter()
            .copied()
            .filter(|&f| fp.lattice.faces[f].dim == 0)
            .collect();
        assert_eq!(shared.len(), 1);
    }

    #[test]
    fn simplex_target_layering_has_one_layer_per_facet() {
        let cfg = make_family(&FamilySpec::CyclicPolytope { n: 5, d: 4, ts: None }).unwrap();
        let fp = framed(cfg, Frame::canonical(4));
        let ogp = ogp_of(&fp);
        let entry = fp.st_entry(fp.lattice.top, 3).unwrap();
        let lay = layering(&fp, &ogp, fp.lattice.top, 3, StSide::Target).unwrap();
        assert_eq!(lay.layers.len(), entry.target.len());
    }

    #[test]
    fn layering_order_respects_string_edges() {
        // Prop-style property: whenever ta_{k-1}(F1) /\ so_{k-1}(F2) is
        // nonempty among cells of one side, F1 precedes F2
        let mut rng = StdRng::seed_from_u64(12);
        let mut tested = 0;
        while tested < 8 {
            let d = 3;
            let pts: Vec<RVec> = (0..rng.gen_range(5..=7))
                .map(|_| RVec::new((0..d).map(|_| rat(rng.gen_range(-5..=5))).collect()))
                .collect();
            let cfg = match PointConfig::new(d, pts) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if cfg.affine_dim() != d {
                continue;
            }
            let (hull, _) = polytope::hull_vertices(&cfg).unwrap();
            if hull.len() < d + 2 {
                continue;
            }
            let fp = match FramedPolytope::new(hull, Frame::canonical(d)) {
                Ok(f) => f,
                Err(_) => continue,
            };
            if !fp.is_admissible().is_admissible() {
                continue;
            }
            let ogp = ogp_of(&fp);
            for k in 1..d as i64 {
                for side in [StSide::Source, StSide::Target] {
                    let lay = layering(&fp, &ogp, fp.lattice.top, k, side).unwrap();
                    for i in 0..lay.order.len() {
                        for j in 0..lay.order.len() {
                            if i == j {
                                continue;
                            }
                            let ta_i = fp.st_entry(lay.order[i], k - 1).unwrap().target;
                            let so_j = fp.st_entry(lay.order[j], k - 1).unwrap().source;
                            if ta_i.iter().any(|w| so_j.contains(w)) {
                                assert!(
                                    i < j,
                                    "string edge against the shelling order at k={k}"
                                );
                            }
                        }
                    }
                }
            }
            tested += 1;
        }
    }

    #[test]
    fn atoms_are_molecules_and_disjoint_vertices_are_not() {
        let seg = PointConfig::new(1, vec![RVec::from_i64(&[0]), RVec::from_i64(&[3])]).unwrap();
        let fp = framed(seg, Frame::canonical(1));
        let ogp = ogp_of(&fp);
        let atom = ogp.atom(fp.lattice.top);
        assert!(is_molecule(&ogp, &atom).unwrap());

        let left = fp.lattice.id_of(&[1]).unwrap();
        let right = fp.lattice.id_of(&[2]).unwrap();
        let two: ClosedSubset = ogp
            .atom(left)
            .union(&ogp.atom(right))
            .copied()
            .collect();
        assert!(!is_molecule(&ogp, &two).unwrap());
    }

    #[test]
    fn boundaries_of_corpus_faces_are_molecules() {
        let cfg = make_family(&FamilySpec::CyclicPolytope { n: 5, d: 3, ts: None }).unwrap();
        let fp = framed(cfg, Frame::canonical(3));
        let ogp = ogp_of(&fp);
        let atom = ogp.atom(fp.lattice.top);
        for k in 0..3 {
            let (bso, bta) = ogp.boundaries(&atom, k);
            assert!(is_molecule(&ogp, &bso).unwrap(), "bso_{k}");
            assert!(is_molecule(&ogp, &bta).unwrap(), "bta_{k}");
        }
    }

    #[test]
    fn molecule_budget_refusal() {
        let cfg = make_family(&FamilySpec::CyclicPolytope { n: 9, d: 4, ts: None }).unwrap();
        let fp = framed(cfg, Frame::canonical(4));
        let ogp = ogp_of(&fp);
        // the 2-skeleton closure of C(9,4) has far more than 12 maximal faces
        let all_2: Vec<FaceId> = fp.lattice.faces_of_dim(2).to_vec();
        let set = ogp.closure(&all_2);
        assert!(matches!(is_molecule(&ogp, &set), Err(Error::Budget(_))));
    }

    #[test]
    fn rdc_passes_on_fixtures() {
        let fixtures: Vec<FramedPolytope> = vec![
            framed(
                PointConfig::new(1, vec![RVec::from_i64(&[0]), RVec::from_i64(&[2])]).unwrap(),
                Frame::canonical(1),
            ),
            framed(
                make_family(&FamilySpec::CyclicPolytope { n: 5, d: 3, ts: None }).unwrap(),
                Frame::canonical(3),
            ),
            framed(
                make_family(&FamilySpec::CyclicZonotope { n: 3, d: 3, ts: None }).unwrap(),
                Frame::canonical(3),
            ),
        ];
        for fp in &fixtures {
            let report = rdc_check(fp).unwrap();
            assert!(report.passed, "{:?}", report.failures);
        }
    }

    #[test]
    fn globular_identities_on_random_4_simplex() {
        let mut rng = StdRng::seed_from_u64(3);
        loop {
            let pts: Vec<RVec> = (0..5)
                .map(|_| RVec::new((0..4).map(|_| rat(rng.gen_range(-6..=6))).collect()))
                .collect();
            let cfg = match PointConfig::new(4, pts) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if cfg.affine_dim() != 4 {
                continue;
            }
            let fp = match FramedPolytope::new(cfg, Frame::canonical(4)) {
                Ok(f) => f,
                Err(_) => continue,
            };
            if !fp.is_admissible().is_admissible() {
                continue;
            }
            let ogp = ogp_of(&fp);
            let atom = ogp.atom(fp.lattice.top);
            let (bso, bta) = ogp.top_boundaries(&atom);
            assert_eq!(ogp.top_boundaries(&bta).0, ogp.top_boundaries(&bso).0);
            assert_eq!(ogp.top_boundaries(&bso).1, ogp.top_boundaries(&bta).1);
            break;
        }
    }

    #[test]
    fn source_restricted_string_graph_is_acyclic() {
        let fp = framed(p5_config(), Frame::canonical(5));
        let ogp = ogp_of(&fp);
        for k in 1..5i64 {
            let lay = layering(&fp, &ogp, fp.lattice.top, k, StSide::Source).unwrap();
            // edges of the (k-1)-string graph among the source cells must
            // all point forward in the shelling order
            for i in 0..lay.order.len() {
                for j in 0..lay.order.len() {
                    if i == j {
                        continue;
                    }
                    let ta_i = fp.st_entry(lay.order[i], k - 1).unwrap().target;
                    let so_j = fp.st_entry(lay.order[j], k - 1).unwrap().source;
                    if ta_i.iter().any(|w| so_j.contains(w)) {
                        assert!(i < j, "cycle in the restricted string graph");
                    }
                }
            }
        }
    }
}
