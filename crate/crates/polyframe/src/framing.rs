//! Frames, admissibility, and the determinant machinery for extended
//! sources and targets.
//!
//! All orientation data is computed in frame coordinates: after transforming
//! vertices by the inverse frame matrix, the projection onto the span of the
//! first `k` frame vectors becomes coordinate truncation, and the boundary
//! determinants reduce to homogenized minors of the truncated coordinates.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num::traits::{One, Zero};

use crate::error::Error;
use crate::exact::{self, rat, Constraint, RMat, RVec, Rat};
use crate::polytope::{self, Face, FaceId, FaceLattice, Label, PointConfig};

/// An ordered basis of ambient space with cached change-of-basis data.
#[derive(Clone, Debug)]
pub struct Frame {
    vectors: Vec<RVec>,
    matrix: RMat,
    inverse: RMat,
}

impl Frame {
    pub fn new(vectors: Vec<RVec>) -> Result<Self, Error> {
        let matrix = RMat::from_cols(&vectors);
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension("a frame needs exactly dim-many vectors".into()));
        }
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::Degenerate("frame vectors are linearly dependent".into()))?;
        Ok(Frame { vectors, matrix, inverse })
    }

    pub fn canonical(d: usize) -> Self {
        Self::new((0..d).map(|i| RVec::unit(d, i)).collect()).expect("identity frame")
    }

    /// `(e_1, -e_2, e_3, ...)`: the reorientation identifying the cyclic
    /// families with the orientals.
    pub fn alternating(d: usize) -> Self {
        Self::new(
            (0..d)
                .map(|i| {
                    let v = RVec::unit(d, i);
                    if i % 2 == 1 {
                        v.scale(&rat(-1))
                    } else {
                        v
                    }
                })
                .collect(),
        )
        .expect("alternating frame")
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[RVec] {
        &self.vectors
    }

    pub fn matrix(&self) -> &RMat {
        &self.matrix
    }

    /// Coordinates of `p` in the frame basis.
    pub fn coords(&self, p: &RVec) -> RVec {
        self.inverse.mul_vec(p)
    }

    /// Reorientation: flips the vectors at the positions where `signs` is -1.
    pub fn reorient(&self, signs: &[i64]) -> Result<Frame, Error> {
        if signs.len() != self.dim() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Parameter("reorientation signs must be +-1 per vector".into()));
        }
        Frame::new(
            self.vectors.iter().zip(signs).map(|(v, &s)| v.scale(&rat(s))).collect(),
        )
    }

    /// Positive lower triangular transformation
    /// `v'_q = lambda_q v_q + sum_{p>q} lambda_{pq} v_p`.
    pub fn lower_triangular(
        &self,
        diag: &[Rat],
        below: &BTreeMap<(usize, usize), Rat>,
    ) -> Result<Frame, Error> {
        let d = self.dim();
        if diag.len() != d {
            return Err(Error::Parameter("need one diagonal coefficient per frame vector".into()));
        }
        if diag.iter().any(|l| *l <= Rat::zero()) {
            return Err(Error::Parameter("diagonal coefficients must be positive".into()));
        }
        let mut out = Vec::with_capacity(d);
        for q in 0..d {
            let mut v = self.vectors[q].scale(&diag[q]);
            for p in q + 1..d {
                if let Some(c) = below.get(&(p, q)) {
                    v = v.add(&self.vectors[p].scale(c));
                }
            }
            out.push(v);
        }
        Frame::new(out)
    }

    /// Gram-Schmidt without normalization, run from the last vector to the
    /// first so the transformation is positive lower triangular.
    pub fn orthogonalize(&self) -> Frame {
        let d = self.dim();
        let mut out: Vec<RVec> = vec![RVec::zeros(0); d];
        for q in (0..d).rev() {
            let mut v = self.vectors[q].clone();
            for p in q + 1..d {
                let coeff = v.dot(&out[p]) / out[p].dot(&out[p]);
                v = v.sub(&out[p].scale(&coeff));
            }
            out[q] = v;
        }
        Frame::new(out).expect("orthogonalization preserves independence")
    }
}

/// A polytope with a frame, its lattice, vertex coordinates in the frame
/// basis, and memoized extended source/target tables.
pub struct FramedPolytope {
    pub cfg: PointConfig,
    pub lattice: FaceLattice,
    pub frame: Frame,
    /// frame coordinates per vertex, indexed like `cfg.points`
    pub coords: Vec<RVec>,
    st_cache: Mutex<HashMap<(FaceId, i64), StEntry>>,
}

/// Extended boundary data of one face at one level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StEntry {
    pub boundary: Vec<FaceId>,
    pub source: Vec<FaceId>,
    pub target: Vec<FaceId>,
}

/// Admissibility verdict; when inadmissible, carries the first offending
/// face and projection level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Degenerate { face: Vec<Label>, dim: i64, level: usize },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

impl FramedPolytope {
    pub fn new(cfg: PointConfig, frame: Frame) -> Result<Self, Error> {
        let lattice = polytope::face_lattice(&cfg)?;
        Self::with_lattice(cfg, lattice, frame)
    }

    pub fn with_lattice(cfg: PointConfig, lattice: FaceLattice, frame: Frame) -> Result<Self, Error> {
        if frame.dim() != cfg.ambient_dim {
            return Err(Error::Dimension(format!(
                "frame dimension {} differs from ambient dimension {}",
                frame.dim(),
                cfg.ambient_dim
            )));
        }
        let coords = cfg.points.iter().map(|p| frame.coords(p)).collect();
        Ok(FramedPolytope { cfg, lattice, frame, coords, st_cache: Mutex::new(HashMap::new()) })
    }

    pub fn dim(&self) -> i64 {
        self.lattice.dim()
    }

    fn coord_of_label(&self, label: Label) -> &RVec {
        let idx = self.cfg.index_of(label).expect("label in config");
        &self.coords[idx]
    }

    /// Lexicographically first affinely independent vertex subset of a face,
    /// in frame coordinates truncated to `take` coordinates.
    fn affine_basis_of_face(&self, face: FaceId) -> Vec<Label> {
        let f = &self.lattice.faces[face];
        let need = (f.dim + 1) as usize;
        let mut chosen: Vec<Label> = Vec::new();
        let mut pts: Vec<RVec> = Vec::new();
        for &v in &f.vertices {
            if chosen.len() == need {
                break;
            }
            let cand = self.coord_of_label(v).clone();
            let mut trial = pts.clone();
            trial.push(cand.clone());
            if polytope::affine_rank(&trial) == trial.len() - 1 {
                chosen.push(v);
                pts.push(cand);
            }
        }
        assert_eq!(chosen.len(), need, "face misses an affine basis");
        chosen
    }

    /// Checks that every k-face projects isomorphically under the k-th
    /// truncation.
    pub fn is_admissible(&self) -> Admissibility {
        let d = self.dim();
        for k in 1..=d {
            for &f in self.lattice.faces_of_dim(k) {
                let basis = self.affine_basis_of_face(f);
                let p0 = self.coord_of_label(basis[0]);
                let cols: Vec<RVec> = basis[1..]
                    .iter()
                    .map(|&v| self.coord_of_label(v).sub(p0).truncate(k as usize))
                    .collect();
                let m = RMat::from_cols(&cols);
                if exact::det_sign(&m).expect("square by construction") == 0 {
                    return Admissibility::Degenerate {
                        face: self.lattice.faces[f].vertices.clone(),
                        dim: k,
                        level: k as usize,
                    };
                }
            }
        }
        Admissibility::Admissible
    }

    pub fn require_admissible(&self) -> Result<(), Error> {
        match self.is_admissible() {
            Admissibility::Admissible => Ok(()),
            Admissibility::Degenerate { face, dim, level } => {
                Err(Error::NotAdmissible { face, dim, level })
            }
        }
    }

    /// Homogenized determinant of the points (first `take` frame
    /// coordinates), columns in the given label order, with an optional
    /// extra column.
    fn homogenized_det(&self, labels: &[Label], extra: Option<&RVec>, take: usize) -> Rat {
        let ncols = labels.len() + extra.iter().len();
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(take + 1);
        let mut top = vec![Rat::one(); labels.len()];
        if extra.is_some() {
            top.push(Rat::zero());
        }
        rows.push(top);
        for r in 0..take {
            let mut row: Vec<Rat> = labels
                .iter()
                .map(|&l| self.coord_of_label(l)[r].clone())
                .collect();
            if let Some(e) = extra {
                row.push(e[r].clone());
            }
            rows.push(row);
        }
        debug_assert_eq!(rows.len(), ncols);
        exact::det(&RMat::from_rows(rows)).expect("square by construction")
    }

    /// Homogenized determinant where the extra column is another vertex
    /// (with leading 1).
    fn homogenized_det_vertex(&self, labels: &[Label], q: Label, take: usize) -> Rat {
        let mut all: Vec<Label> = labels.to_vec();
        all.push(q);
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(take + 1);
        rows.push(vec![Rat::one(); all.len()]);
        for r in 0..take {
            rows.push(all.iter().map(|&l| self.coord_of_label(l)[r].clone()).collect());
        }
        exact::det(&RMat::from_rows(rows)).expect("square by construction")
    }

    /// Extended boundary/source/target of `face` at level `k`, memoized.
    ///
    /// A k-subface E lies in the k-boundary of F when the homogenized
    /// determinant over the first k+1 frame coordinates keeps a constant
    /// strict sign as the extra column runs over the vertices of F outside
    /// E; it is a source when that sign matches the sign of the homogenized
    /// determinant of E itself at level k.
    pub fn st_entry(&self, face: FaceId, k: i64) -> Result<StEntry, Error> {
        if let Some(hit) = self.st_cache.lock().unwrap().get(&(face, k)) {
            return Ok(hit.clone());
        }
        let fdim = self.lattice.faces[face].dim;
        if k < 0 || k >= fdim {
            return Err(Error::Parameter(format!(
                "st level {k} out of range for a face of dimension {fdim}"
            )));
        }
        let take = (k + 1) as usize;
        let fvertices = &self.lattice.faces[face].vertices;
        let mut entry = StEntry::default();
        for &sub in &self.lattice.k_faces_of(face, k) {
            let basis = self.affine_basis_of_face(sub);
            let sub_vertices = &self.lattice.faces[sub].vertices;
            let mut sign = 0i8;
            let mut constant = true;
            for &q in fvertices.iter().filter(|v| !sub_vertices.contains(v)) {
                let det = self.homogenized_det_vertex(&basis, q, take);
                let s = if det.is_zero() {
                    0
                } else if det > Rat::zero() {
                    1
                } else {
                    -1
                };
                if s == 0 {
                    constant = false;
                    break;
                }
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    constant = false;
                    break;
                }
            }
            if !constant || sign == 0 {
                continue;
            }
            entry.boundary.push(sub);
            let reference = self.homogenized_det(&basis, None, k as usize);
            if reference.is_zero() {
                return Err(Error::NotAdmissible {
                    face: sub_vertices.clone(),
                    dim: k,
                    level: k as usize,
                });
            }
            let ref_sign: i8 = if reference > Rat::zero() { 1 } else { -1 };
            if ref_sign == sign {
                entry.source.push(sub);
            } else {
                entry.target.push(sub);
            }
        }
        entry.boundary.sort_unstable();
        entry.source.sort_unstable();
        entry.target.sort_unstable();
        self.st_cache.lock().unwrap().insert((face, k), entry.clone());
        Ok(entry)
    }

    pub fn k_boundary(&self, face: FaceId, k: i64) -> Result<Vec<FaceId>, Error> {
        Ok(self.st_entry(face, k)?.boundary)
    }

    pub fn k_source(&self, face: FaceId, k: i64) -> Result<Vec<FaceId>, Error> {
        Ok(self.st_entry(face, k)?.source)
    }

    pub fn k_target(&self, face: FaceId, k: i64) -> Result<Vec<FaceId>, Error> {
        Ok(self.st_entry(face, k)?.target)
    }

    /// Outward normal covector of the projected facet E inside the projected
    /// face F, in the span of the first `dim F` frame coordinates.
    fn facet_normal(&self, face: FaceId, facet: FaceId) -> Result<RVec, Error> {
        let k = self.lattice.faces[face].dim as usize;
        let basis = self.affine_basis_of_face(facet);
        let p0 = self.coord_of_label(basis[0]).truncate(k);
        let rows: Vec<Vec<Rat>> = basis[1..]
            .iter()
            .map(|&v| {
                self.coord_of_label(v).truncate(k).sub(&p0).iter().cloned().collect()
            })
            .collect();
        let normal_space = if rows.is_empty() {
            // facet is a single vertex, k = 1
            vec![RVec::unit(1, 0)]
        } else {
            exact::kernel(&RMat::from_rows(rows))
        };
        if normal_space.len() != 1 {
            return Err(Error::Degenerate(format!(
                "projected facet {:?} does not span a hyperplane",
                self.lattice.faces[facet].vertices
            )));
        }
        let mut normal = normal_space.into_iter().next().unwrap();
        // orient outward: the rest of the face evaluates below the facet level
        let level = normal.dot(&p0);
        let witness = self.lattice.faces[face]
            .vertices
            .iter()
            .find(|v| !self.lattice.faces[facet].vertices.contains(v))
            .expect("face has vertices outside its facet");
        let value = normal.dot(&self.coord_of_label(*witness).truncate(k));
        if value == level {
            return Err(Error::NotAdmissible {
                face: self.lattice.faces[facet].vertices.clone(),
                dim: self.lattice.faces[facet].dim,
                level: k,
            });
        }
        if value > level {
            normal = normal.scale(&rat(-1));
        }
        // normalize scale: first nonzero coordinate has absolute value 1
        if let Some(first) = normal.iter().find(|x| !x.is_zero()) {
            let scale = Rat::one() / if *first < Rat::zero() { -first.clone() } else { first.clone() };
            normal = normal.scale(&scale);
        }
        Ok(normal)
    }

    /// Source/target partition of the facets of `face` via the sign of the
    /// pairing of the projected facet normal with the last relevant frame
    /// vector.
    pub fn face_source_target(&self, face: FaceId) -> Result<(Vec<FaceId>, Vec<FaceId>), Error> {
        let k = self.lattice.faces[face].dim;
        if k < 1 {
            return Err(Error::Parameter("source/target partition needs dim >= 1".into()));
        }
        let mut source = Vec::new();
        let mut target = Vec::new();
        for &e in &self.lattice.covers_down[face] {
            let normal = self.facet_normal(face, e)?;
            let pairing = &normal[(k - 1) as usize];
            if pairing.is_zero() {
                return Err(Error::NotAdmissible {
                    face: self.lattice.faces[e].vertices.clone(),
                    dim: self.lattice.faces[e].dim,
                    level: k as usize,
                });
            }
            if *pairing < Rat::zero() {
                source.push(e);
            } else {
                target.push(e);
            }
        }
        source.sort_unstable();
        target.sort_unstable();
        Ok((source, target))
    }
}

/// Per-face source/target partition, keyed by vertex sets so that
/// orientations computed on different lattices of the same polytope compare
/// equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FOrientation {
    pub faces: BTreeMap<Vec<Label>, (Vec<Vec<Label>>, Vec<Vec<Label>>)>,
    pub grounded: bool,
}

impl FOrientation {
    pub fn source_of(&self, face: &[Label]) -> Option<&Vec<Vec<Label>>> {
        self.faces.get(face).map(|(s, _)| s)
    }

    pub fn target_of(&self, face: &[Label]) -> Option<&Vec<Vec<Label>>> {
        self.faces.get(face).map(|(_, t)| t)
    }
}

/// Collects the facet partition over every face of dimension >= 1.
pub fn f_orientation(fp: &FramedPolytope) -> Result<FOrientation, Error> {
    let mut faces = BTreeMap::new();
    for dim in 1..=fp.dim() {
        for &f in fp.lattice.faces_of_dim(dim) {
            let (s, t) = fp.face_source_target(f)?;
            let key = fp.lattice.faces[f].vertices.clone();
            let sv = s.iter().map(|&id| fp.lattice.faces[id].vertices.clone()).collect();
            let tv = t.iter().map(|&id| fp.lattice.faces[id].vertices.clone()).collect();
            faces.insert(key, (sv, tv));
        }
    }
    Ok(FOrientation { faces, grounded: true })
}

pub fn f_orientation_equal(a: &FOrientation, b: &FOrientation) -> bool {
    a.faces == b.faces
}

/// Scales the i-th frame coordinate of every vertex by `epsilon_i`, keeping
/// the frame attached unchanged.
pub fn flatten(fp: &FramedPolytope, epsilon: &[Rat]) -> Result<FramedPolytope, Error> {
    let d = fp.cfg.ambient_dim;
    if epsilon.len() != d {
        return Err(Error::Parameter("flattening needs one scale per frame vector".into()));
    }
    if epsilon.iter().any(|e| *e <= Rat::zero()) {
        return Err(Error::Parameter("flattening scales must be positive".into()));
    }
    let points: Vec<RVec> = fp
        .coords
        .iter()
        .map(|c| {
            let scaled = RVec::new(c.iter().zip(epsilon).map(|(x, e)| x * e).collect());
            fp.frame.matrix().mul_vec(&scaled)
        })
        .collect();
    let cfg = PointConfig::with_labels(d, points, fp.cfg.labels.clone())?;
    FramedPolytope::new(cfg, fp.frame.clone())
}

/// Transport a framed polytope through a linear automorphism.
pub fn transport(fp: &FramedPolytope, phi: &RMat) -> Result<FramedPolytope, Error> {
    if phi.inverse().is_none() {
        return Err(Error::Degenerate("transport needs an automorphism".into()));
    }
    let points: Vec<RVec> = fp.cfg.points.iter().map(|p| phi.mul_vec(p)).collect();
    let cfg = PointConfig::with_labels(fp.cfg.ambient_dim, points, fp.cfg.labels.clone())?;
    let frame = Frame::new(fp.frame.vectors().iter().map(|v| phi.mul_vec(v)).collect())?;
    FramedPolytope::new(cfg, frame)
}

/// Verdict of the tight-subdivision check at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubdivisionVerdict {
    Tiles,
    VolumeMismatch { expected: Rat, got: Rat, side: &'static str },
    Overlap { a: Vec<Label>, b: Vec<Label>, side: &'static str },
}

impl SubdivisionVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SubdivisionVerdict::Tiles)
    }
}

/// Verifies that the projected k-source cells (and k-target cells) tile the
/// projected polytope: exact volume bookkeeping plus pairwise
/// interior-disjointness by LP.
pub fn subdivision_check(fp: &FramedPolytope, k: i64) -> Result<SubdivisionVerdict, Error> {
    if k < 0 || k >= fp.dim() {
        return Err(Error::Parameter(format!("subdivision level {k} out of range")));
    }
    let entry = fp.st_entry(fp.lattice.top, k)?;
    if k == 0 {
        // the projected point is covered by exactly one source/target vertex
        if entry.source.len() == 1 && entry.target.len() == 1 {
            return Ok(SubdivisionVerdict::Tiles);
        }
        return Ok(SubdivisionVerdict::VolumeMismatch {
            expected: Rat::one(),
            got: rat(entry.source.len() as i64),
            side: "source",
        });
    }
    let ku = k as usize;
    // projected polytope volume
    let projected = dedup_points(fp.coords.iter().map(|c| c.truncate(ku)));
    let proj_cfg = PointConfig::new(ku, projected)?;
    let (hull, _) = polytope::hull_vertices(&proj_cfg)?;
    let total = polytope::hull_volume_scaled(&hull)?;

    for (cells, side) in [(&entry.source, "source"), (&entry.target, "target")] {
        let mut acc = Rat::zero();
        for &cell in cells.iter() {
            for simplex in polytope::triangulate_face(&fp.lattice, cell) {
                let pts: Vec<RVec> =
                    simplex.iter().map(|&l| fp.coord_of_label(l).truncate(ku)).collect();
                acc += polytope::simplex_volume_scaled(&pts)?;
            }
        }
        if acc != total {
            return Ok(SubdivisionVerdict::VolumeMismatch { expected: total, got: acc, side });
        }
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if cells_overlap(fp, cells[i], cells[j], ku)? {
                    return Ok(SubdivisionVerdict::Overlap {
                        a: fp.lattice.faces[cells[i]].vertices.clone(),
                        b: fp.lattice.faces[cells[j]].vertices.clone(),
                        side,
                    });
                }
            }
        }
    }
    Ok(SubdivisionVerdict::Tiles)
}

/// Strict-interior intersection test of two projected k-cells.
fn cells_overlap(fp: &FramedPolytope, a: FaceId, b: FaceId, k: usize) -> Result<bool, Error> {
    let mut cs = Vec::new();
    for &cell in [a, b].iter() {
        for &facet in &fp.lattice.covers_down[cell] {
            let normal = fp.facet_normal(cell, facet)?;
            let basis = fp.affine_basis_of_face(facet);
            let level = normal.dot(&fp.coord_of_label(basis[0]).truncate(k));
            // interior: <n, x> < level for the outward normal
            cs.push(Constraint::lt(normal, level));
        }
    }
    Ok(exact::lp_feasible(k, &cs).is_feasible())
}

/// Distinct points, keeping first occurrences in order.
fn dedup_points<I: IntoIterator<Item = RVec>>(points: I) -> Vec<RVec> {
    let mut out: Vec<RVec> = Vec::new();
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Returns the frame-coordinate configuration of the k-th projection of the
/// polytope (hull vertices only) framed by the first k canonical vectors.
pub fn project(fp: &FramedPolytope, k: usize) -> Result<FramedPolytope, Error> {
    if k == 0 || k as i64 > fp.dim() {
        return Err(Error::Parameter(format!("projection level {k} out of range")));
    }
    let projected = dedup_points(fp.coords.iter().map(|c| c.truncate(k)));
    let cfg = PointConfig::new(k, projected)?;
    let (hull, _) = polytope::hull_vertices(&cfg)?;
    FramedPolytope::new(hull, Frame::canonical(k))
}

/// Facets of a configuration classified into source/target of the top face
/// via exact normal pairings, without building the full lattice. Used for
/// the large zonotope comparisons.
pub fn top_source_target(
    cfg: &PointConfig,
    frame: &Frame,
    facet_faces: &[Face],
) -> Result<(Vec<Vec<Label>>, Vec<Vec<Label>>), Error> {
    let d = cfg.ambient_dim;
    let coords: HashMap<Label, RVec> = cfg
        .labels
        .iter()
        .zip(&cfg.points)
        .map(|(&l, p)| (l, frame.coords(p)))
        .collect();
    let mut source = Vec::new();
    let mut target = Vec::new();
    for f in facet_faces {
        let pts: Vec<RVec> = f.vertices.iter().map(|l| coords[l].clone()).collect();
        let p0 = &pts[0];
        let mut normal = exact::affine_hyperplane_normal(&pts, d).ok_or_else(|| {
            Error::Degenerate(format!("facet {:?} does not span a hyperplane", f.vertices))
        })?;
        let level = normal.dot(p0);
        let witness = cfg
            .labels
            .iter()
            .find(|l| !f.vertices.contains(l))
            .ok_or_else(|| Error::Degenerate("facet equals the whole configuration".into()))?;
        let v = normal.dot(&coords[witness]);
        if v == level {
            return Err(Error::Degenerate("witness lies on the facet hyperplane".into()));
        }
        if v > level {
            normal = normal.scale(&rat(-1));
        }
        let pairing = &normal[d - 1];
        if pairing.is_zero() {
            return Err(Error::NotAdmissible {
                face: f.vertices.clone(),
                dim: f.dim,
                level: d,
            });
        }
        if *pairing < Rat::zero() {
            source.push(f.vertices.clone());
        } else {
            target.push(f.vertices.clone());
        }
    }
    source.sort();
    target.sort();
    Ok((source, target))
}
