//! Vertex configurations, exact face-lattice enumeration, named polytope
//! families, combinatorial face rules for the cyclic families, and generic
//! hyperplane slicing.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::Error;
use crate::exact::{self, rat, Constraint, Feasibility, RMat, RVec, Rat};
use num::traits::{One, Zero};

/// Stable 1-based vertex label.
pub type Label = usize;

/// Index of a face inside a [`FaceLattice`].
pub type FaceId = usize;

/// An exact rational vertex configuration. Every point is required to be a
/// vertex of the convex hull; [`assert_vertices`] checks this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    pub ambient_dim: usize,
    pub points: Vec<RVec>,
    pub labels: Vec<Label>,
}

impl PointConfig {
    pub fn new(ambient_dim: usize, points: Vec<RVec>) -> Result<Self, Error> {
        let labels = (1..=points.len()).collect();
        Self::with_labels(ambient_dim, points, labels)
    }

    pub fn with_labels(
        ambient_dim: usize,
        points: Vec<RVec>,
        labels: Vec<Label>,
    ) -> Result<Self, Error> {
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::Dimension("point arity differs from ambient dimension".into()));
        }
        if labels.len() != points.len() {
            return Err(Error::Parameter("labels and points must have equal length".into()));
        }
        let distinct: HashSet<_> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Parameter("duplicate labels".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::Degenerate(format!(
                        "points {} and {} coincide",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(PointConfig { ambient_dim, points, labels })
    }

    /// Columns of a matrix as a configuration; labels 1..n in column order.
    pub fn from_columns(m: &RMat) -> Result<Self, Error> {
        let points = (0..m.ncols()).map(|j| m.col(j)).collect();
        Self::new(m.nrows(), points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn point(&self, label: Label) -> &RVec {
        let idx = self.index_of(label).expect("unknown label");
        &self.points[idx]
    }

    /// Affine dimension of the configuration.
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.points)
    }
}

/// Rank of the difference vectors, i.e. the dimension of the affine span.
pub fn affine_rank(points: &[RVec]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).iter().cloned().collect())
        .collect();
    exact::rank(&RMat::from_rows(rows))
}

/// A face given by its sorted vertex labels; the empty face has dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<Label>,
    pub dim: i64,
}

/// The full face lattice of a polytope, graded by dimension, including the
/// empty face and the top face.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// face ids grouped by dimension; index 0 holds dimension -1
    pub by_dim: Vec<Vec<FaceId>>,
    /// covers_up[f] lists g with f lessdot g
    pub covers_up: Vec<Vec<FaceId>>,
    /// covers_down[g] lists f with f lessdot g
    pub covers_down: Vec<Vec<FaceId>>,
    index: HashMap<Vec<Label>, FaceId>,
    pub top: FaceId,
    pub empty: FaceId,
}

impl FaceLattice {
    pub fn dim(&self) -> i64 {
        self.faces[self.top].dim
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn id_of(&self, vertices: &[Label]) -> Option<FaceId> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.index.get(&v).copied()
    }

    pub fn faces_of_dim(&self, dim: i64) -> &[FaceId] {
        let idx = (dim + 1) as usize;
        if idx < self.by_dim.len() {
            &self.by_dim[idx]
        } else {
            &[]
        }
    }

    /// Ids of all faces contained in `f` (including `f` and the empty face).
    pub fn downset(&self, f: FaceId) -> Vec<FaceId> {
        let target: BTreeSet<Label> = self.faces[f].vertices.iter().copied().collect();
        (0..self.faces.len())
            .filter(|&g| self.faces[g].vertices.iter().all(|v| target.contains(v)))
            .collect()
    }

    /// The k-dimensional faces contained in `f`.
    pub fn k_faces_of(&self, f: FaceId, k: i64) -> Vec<FaceId> {
        self.downset(f).into_iter().filter(|&g| self.faces[g].dim == k).collect()
    }

    /// Number of faces, empty and top included.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Checks the diamond property on every codimension-2 interval.
    pub fn diamond_property_holds(&self) -> bool {
        for g in 0..self.faces.len() {
            for &f in &self.covers_down[g] {
                for &e in &self.covers_down[f] {
                    let between = self.covers_down[g]
                        .iter()
                        .filter(|&&m| self.covers_down[m].contains(&e))
                        .count();
                    if between != 2 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Verdict that every point of the configuration is an exposed vertex,
/// decided by exact strict-separation LPs.
pub fn assert_vertices(cfg: &PointConfig) -> Result<(), Error> {
    let d = cfg.ambient_dim;
    for (i, p) in cfg.points.iter().enumerate() {
        // find (psi, c) with <psi,q> < c for q != p and <psi,p> = c
        let mut cs = Vec::new();
        for (j, q) in cfg.points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut coeffs: Vec<Rat> = q.iter().cloned().collect();
            coeffs.push(-Rat::one());
            cs.push(Constraint::lt(RVec::new(coeffs), Rat::zero()));
        }
        let mut coeffs: Vec<Rat> = p.iter().cloned().collect();
        coeffs.push(-Rat::one());
        cs.push(Constraint::eq(RVec::new(coeffs), Rat::zero()));
        if !exact::lp_feasible(d + 1, &cs).is_feasible() {
            return Err(Error::NotVertex { label: cfg.labels[i] });
        }
    }
    Ok(())
}

/// Affine coordinates of the configuration inside its span: returns points
/// in dimension `affine_dim` preserving order. Used so that all facet and
/// volume computations can assume full dimension.
pub fn affine_coordinates(cfg: &PointConfig) -> Vec<RVec> {
    let d = cfg.affine_dim();
    if cfg.points.is_empty() {
        return Vec::new();
    }
    if d == 0 {
        return cfg.points.iter().map(|_| RVec::zeros(0)).collect();
    }
    let origin = &cfg.points[0];
    // greedily pick an independent set of difference vectors
    let mut basis: Vec<RVec> = Vec::new();
    for p in &cfg.points[1..] {
        if basis.len() == d {
            break;
        }
        let cand = p.sub(origin);
        let mut trial = basis.clone();
        trial.push(cand.clone());
        if exact::rank(&RMat::from_cols(&trial)) == trial.len() {
            basis.push(cand);
        }
    }
    assert_eq!(basis.len(), d, "affine basis extraction failed");
    let bmat = RMat::from_cols(&basis);
    cfg.points
        .iter()
        .map(|p| exact::solve(&bmat, &p.sub(origin)).expect("point outside affine span"))
        .collect()
}

/// Exhaustive facet enumeration by hyperplane spanning: every affinely
/// independent `d'`-subset spans a candidate hyperplane which is kept when
/// all remaining vertices lie weakly on one side.
pub fn facets(cfg: &PointConfig) -> Result<Vec<Face>, Error> {
    let n = cfg.len();
    let d = cfg.affine_dim();
    if n == 0 {
        return Err(Error::Degenerate("empty configuration".into()));
    }
    if d == 0 {
        return Ok(vec![Face { vertices: vec![], dim: -1 }]);
    }
    let pts = affine_coordinates(cfg);
    if d == 1 {
        // endpoints of a segment
        let mut ids: Vec<usize> = (0..n).collect();
        ids.sort_by(|&a, &b| pts[a][0].cmp(&pts[b][0]));
        return Ok(vec![
            Face { vertices: vec![cfg.labels[ids[0]]], dim: 0 },
            Face { vertices: vec![cfg.labels[ids[n - 1]]], dim: 0 },
        ]);
    }

    let mut seen: HashSet<Vec<Label>> = HashSet::new();
    let mut result = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        if let Some(facet) = facet_from_subset(&pts, &subset, n, d) {
            let mut labels: Vec<Label> = facet.iter().map(|&i| cfg.labels[i]).collect();
            labels.sort_unstable();
            if seen.insert(labels.clone()) {
                let member_pts: Vec<RVec> = facet.iter().map(|&i| pts[i].clone()).collect();
                let fdim = affine_rank(&member_pts) as i64;
                if fdim != (d as i64) - 1 {
                    return Err(Error::Degenerate(format!(
                        "facet candidate {labels:?} has affine dimension {fdim}, expected {}",
                        d - 1
                    )));
                }
                result.push(Face { vertices: labels, dim: fdim });
            }
        }
        // next d-subset of 0..n in lexicographic order
        let mut i = d;
        loop {
            if i == 0 {
                return finish_facets(result, d);
            }
            i -= 1;
            if subset[i] != i + n - d {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn finish_facets(result: Vec<Face>, d: usize) -> Result<Vec<Face>, Error> {
    if result.len() < d + 1 {
        return Err(Error::Degenerate(format!(
            "found only {} facets for a {}-dimensional hull",
            result.len(),
            d
        )));
    }
    Ok(result)
}

/// Returns the member indices of the facet spanned by `subset`, if it is one.
fn facet_from_subset(pts: &[RVec], subset: &[usize], _n: usize, d: usize) -> Option<Vec<usize>> {
    let p0 = &pts[subset[0]];
    let rows: Vec<Vec<Rat>> =
        subset[1..].iter().map(|&i| pts[i].sub(p0).iter().cloned().collect()).collect();
    let m = RMat::from_rows(rows);
    if exact::rank(&m) != d - 1 {
        return None;
    }
    let normal = exact::kernel(&m).into_iter().next()?;
    let c = normal.dot(p0);
    let mut members = Vec::new();
    let mut pos = false;
    let mut neg = false;
    for (i, p) in pts.iter().enumerate() {
        let v = normal.dot(p);
        if v == c {
            members.push(i);
        } else if v > c {
            pos = true;
        } else {
            neg = true;
        }
        if pos && neg {
            return None;
        }
    }
    // only report each facet once, from its lexicographically first spanning subset
    if members.first() != Some(&subset[0]) {
        return None;
    }
    Some(members)
}

/// Build the face lattice from the facet list: all faces are intersections
/// of facet vertex sets, closed under intersection, plus top and empty.
pub fn face_lattice(cfg: &PointConfig) -> Result<FaceLattice, Error> {
    let facet_faces = facets(cfg)?;
    face_lattice_from_facets(cfg, &facet_faces)
}

/// Lattice construction when the facets are already known (for families with
/// combinatorial facet descriptions).
pub fn face_lattice_from_facets(
    cfg: &PointConfig,
    facet_faces: &[Face],
) -> Result<FaceLattice, Error> {
    let top_vertices: Vec<Label> = {
        let mut v = cfg.labels.clone();
        v.sort_unstable();
        v
    };
    let mut sets: HashSet<Vec<Label>> = HashSet::new();
    sets.insert(top_vertices.clone());
    sets.insert(vec![]);
    for f in facet_faces {
        sets.insert(f.vertices.clone());
    }
    // close under pairwise intersection
    loop {
        let snapshot: Vec<Vec<Label>> = sets.iter().cloned().collect();
        let before = sets.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let a: BTreeSet<Label> = snapshot[i].iter().copied().collect();
                let inter: Vec<Label> =
                    snapshot[j].iter().filter(|v| a.contains(v)).copied().collect();
                sets.insert(inter);
            }
        }
        if sets.len() == before {
            break;
        }
    }

    let point_of = |l: Label| cfg.point(l).clone();
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vertices| {
            let dim = if vertices.is_empty() {
                -1
            } else {
                let pts: Vec<RVec> = vertices.iter().map(|&l| point_of(l)).collect();
                affine_rank(&pts) as i64
            };
            Face { vertices, dim }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));

    let index: HashMap<Vec<Label>, FaceId> =
        faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
    let top = index[&top_vertices];
    let empty = index[&Vec::new()];
    let max_dim = faces[top].dim;
    let mut by_dim = vec![Vec::new(); (max_dim + 2) as usize];
    for (i, f) in faces.iter().enumerate() {
        by_dim[(f.dim + 1) as usize].push(i);
    }
    let mut covers_up = vec![Vec::new(); faces.len()];
    let mut covers_down = vec![Vec::new(); faces.len()];
    for (gi, g) in faces.iter().enumerate() {
        for (fi, f) in faces.iter().enumerate() {
            if f.dim + 1 == g.dim {
                let gset: BTreeSet<Label> = g.vertices.iter().copied().collect();
                if f.vertices.iter().all(|v| gset.contains(v)) {
                    covers_up[fi].push(gi);
                    covers_down[gi].push(fi);
                }
            }
        }
    }
    Ok(FaceLattice { faces, by_dim, covers_up, covers_down, index, top, empty })
}

/// Named polytope families. Cyclic parameters default to `t_i = i` and can
/// be overridden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Simplex(usize),
    Cube(usize),
    Cross(usize),
    CyclicPolytope { n: usize, d: usize, ts: Option<Vec<Rat>> },
    CyclicZonotope { n: usize, d: usize, ts: Option<Vec<Rat>> },
    CyclicCube(usize),
    CyclicSimplex(usize),
}

fn default_ts(n: usize) -> Vec<Rat> {
    (1..=n as i64).map(rat).collect()
}

fn check_ts(n: usize, ts: &[Rat]) -> Result<(), Error> {
    if ts.len() != n {
        return Err(Error::Parameter(format!("expected {n} parameters, got {}", ts.len())));
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("parameters t_i must be strictly increasing".into()));
    }
    Ok(())
}

/// Point on the moment curve `(t, t^2, ..., t^d)`.
pub fn moment_point(t: &Rat, d: usize) -> RVec {
    let mut coords = Vec::with_capacity(d);
    let mut pow = t.clone();
    for _ in 0..d {
        coords.push(pow.clone());
        pow *= t;
    }
    RVec::new(coords)
}

/// Point on the Veronese curve `(1, t, ..., t^(d-1))`.
pub fn veronese_point(t: &Rat, d: usize) -> RVec {
    let mut coords = Vec::with_capacity(d);
    let mut pow = Rat::one();
    for _ in 0..d {
        coords.push(pow.clone());
        pow *= t;
    }
    RVec::new(coords)
}

/// Extra data for a cyclic zonotope configuration: which generator subset
/// defines each vertex.
#[derive(Clone, Debug)]
pub struct ZonotopeMeta {
    pub n: usize,
    pub d: usize,
    pub ts: Vec<Rat>,
    /// generator subset A per vertex, parallel to the labels of the config
    pub vertex_sets: Vec<BTreeSet<usize>>,
}

impl ZonotopeMeta {
    pub fn generator(&self, i: usize) -> RVec {
        veronese_point(&self.ts[i - 1], self.d)
    }

    pub fn label_of_set(&self, set: &BTreeSet<usize>) -> Option<Label> {
        self.vertex_sets.iter().position(|s| s == set).map(|i| i + 1)
    }
}

/// Number of blocks boundaries in the indicator sequence of `set` along `order`.
fn alternations(order: &[usize], set: &BTreeSet<usize>) -> usize {
    let mut count = 0;
    for w in order.windows(2) {
        if set.contains(&w[0]) != set.contains(&w[1]) {
            count += 1;
        }
    }
    count
}

/// Cyclic zonotope `Z(n,d)` with its vertex bookkeeping. Vertex-defining
/// subsets are exactly those whose indicator sequence has at most `d-1`
/// alternations, because pairings with the Veronese curve are polynomials of
/// degree `d-1`.
pub fn cyclic_zonotope(n: usize, d: usize, ts: Option<Vec<Rat>>) -> Result<(PointConfig, ZonotopeMeta), Error> {
    if d == 0 || n < d {
        return Err(Error::Parameter(format!("cyclic zonotope needs n >= d >= 1, got n={n}, d={d}")));
    }
    if n > 16 {
        return Err(Error::Budget(format!("cyclic zonotope vertex enumeration capped at n = 16, got {n}")));
    }
    let ts = match ts {
        Some(ts) => {
            check_ts(n, &ts)?;
            ts
        }
        None => default_ts(n),
    };
    let order: Vec<usize> = (1..=n).collect();
    let mut vertex_sets = Vec::new();
    let mut points = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if alternations(&order, &set) <= d - 1 {
            let mut p = RVec::zeros(d);
            for &a in &set {
                p = p.add(&veronese_point(&ts[a - 1], d));
            }
            vertex_sets.push(set);
            points.push(p);
        }
    }
    let cfg = PointConfig::new(d, points)?;
    Ok((cfg, ZonotopeMeta { n, d, ts, vertex_sets }))
}

/// Construct the configuration of a named family.
pub fn make_family(spec: &FamilySpec) -> Result<PointConfig, Error> {
    match spec {
        FamilySpec::Simplex(d) => {
            let points = (0..=*d).map(|i| RVec::unit(d + 1, i)).collect();
            PointConfig::new(d + 1, points)
        }
        FamilySpec::Cube(d) => {
            if *d == 0 || *d > 16 {
                return Err(Error::Parameter(format!("cube dimension out of range: {d}")));
            }
            let points = (0u32..(1 << d))
                .map(|mask| {
                    RVec::new((0..*d).map(|i| rat((mask >> i & 1) as i64)).collect())
                })
                .collect();
            PointConfig::new(*d, points)
        }
        FamilySpec::Cross(d) => {
            if *d == 0 {
                return Err(Error::Parameter("cross-polytope needs d >= 1".into()));
            }
            let mut points = Vec::new();
            for i in 0..*d {
                points.push(RVec::unit(*d, i));
                points.push(RVec::unit(*d, i).scale(&rat(-1)));
            }
            PointConfig::new(*d, points)
        }
        FamilySpec::CyclicPolytope { n, d, ts } => {
            if *d == 0 || *n < d + 1 {
                return Err(Error::Parameter(format!(
                    "cyclic polytope needs n >= d+1 >= 2, got n={n}, d={d}"
                )));
            }
            let ts = match ts {
                Some(ts) => {
                    check_ts(*n, ts)?;
                    ts.clone()
                }
                None => default_ts(*n),
            };
            let points = ts.iter().map(|t| moment_point(t, *d)).collect();
            PointConfig::new(*d, points)
        }
        FamilySpec::CyclicZonotope { n, d, ts } => Ok(cyclic_zonotope(*n, *d, ts.clone())?.0),
        FamilySpec::CyclicCube(d) => Ok(cyclic_zonotope(*d, *d, None)?.0),
        FamilySpec::CyclicSimplex(d) => {
            make_family(&FamilySpec::CyclicPolytope { n: d + 1, d: *d, ts: None })
        }
    }
}

/// Combinatorial facet of a cyclic polytope or zonotope together with its
/// source/target classification under the canonical frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetRule {
    /// facet of `C(n,d)` as a vertex subset
    Cyclic { vertices: BTreeSet<usize>, is_source: bool },
    /// facet of `Z(n,d)` as a (generators, initial vertex) pair
    Zonotope { generators: BTreeSet<usize>, initial: BTreeSet<usize>, is_source: bool },
}

/// `b` is even in `L` when the number of elements of `L` above it is even.
pub fn is_even_in(b: usize, l: &BTreeSet<usize>) -> bool {
    l.iter().filter(|&&x| x > b).count() % 2 == 0
}

/// Gale evenness rules: facets of the canonically framed `C(n,d)` or
/// `Z(n,d)` with their membership in the source or target.
pub fn combinatorial_faces(kind: &FamilySpec) -> Result<Vec<FacetRule>, Error> {
    match kind {
        FamilySpec::CyclicPolytope { n, d, .. } => {
            let mut rules = Vec::new();
            for set in subsets_of_size(*n, *d) {
                let outside: Vec<usize> = (1..=*n).filter(|i| !set.contains(i)).collect();
                let all_even = outside.iter().all(|&b| is_even_in(b, &set));
                let all_odd = outside.iter().all(|&b| !is_even_in(b, &set));
                if all_even || all_odd {
                    rules.push(FacetRule::Cyclic { vertices: set, is_source: all_even });
                }
            }
            Ok(rules)
        }
        FamilySpec::CyclicZonotope { n, d, .. } => {
            let mut rules = Vec::new();
            for gens in subsets_of_size(*n, *d - 1) {
                let outside: Vec<usize> = (1..=*n).filter(|i| !gens.contains(i)).collect();
                // condition (1): initial vertex collects exactly the odd elements
                let odd: BTreeSet<usize> =
                    outside.iter().copied().filter(|&b| !is_even_in(b, &gens)).collect();
                let even: BTreeSet<usize> =
                    outside.iter().copied().filter(|&b| is_even_in(b, &gens)).collect();
                rules.push(FacetRule::Zonotope {
                    generators: gens.clone(),
                    initial: odd,
                    is_source: true,
                });
                rules.push(FacetRule::Zonotope {
                    generators: gens,
                    initial: even,
                    is_source: false,
                });
            }
            Ok(rules)
        }
        _ => Err(Error::Scope("combinatorial face rules exist for the cyclic families only".into())),
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for i in start..=n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(1, n, k, &mut current, &mut out);
    out
}

/// Facets of a cyclic zonotope directly from its generator structure: each
/// `(d-1)`-subset of generators spans a hyperplane carrying two parallel
/// facets. Returns (rule, vertex labels) pairs; the classification flag is
/// geometric (sign of the normal pairing with `e_d`).
pub fn zonotope_facets(meta: &ZonotopeMeta) -> Result<Vec<(FacetRule, Vec<Label>)>, Error> {
    let d = meta.d;
    let mut out = Vec::new();
    for gens in subsets_of_size(meta.n, d - 1) {
        let rows: Vec<Vec<Rat>> =
            gens.iter().map(|&g| meta.generator(g).iter().cloned().collect()).collect();
        let m = RMat::from_rows(rows);
        let normal = exact::kernel(&m)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Degenerate("zonotope generators do not span a hyperplane".into()))?;
        for sign in [1i64, -1] {
            let psi = normal.scale(&rat(sign));
            let initial: BTreeSet<usize> = (1..=meta.n)
                .filter(|&a| !gens.contains(&a) && psi.dot(&meta.generator(a)) > Rat::zero())
                .collect();
            if (1..=meta.n)
                .any(|a| !gens.contains(&a) && psi.dot(&meta.generator(a)).is_zero())
            {
                return Err(Error::Degenerate("generator lies on a facet hyperplane".into()));
            }
            // vertices of the facet: initial set plus any corner of the subcube
            let gen_list: Vec<usize> = gens.iter().copied().collect();
            let mut labels = Vec::new();
            for mask in 0u32..(1 << gen_list.len()) {
                let mut set = initial.clone();
                for (i, &g) in gen_list.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        set.insert(g);
                    }
                }
                let label = meta.label_of_set(&set).ok_or_else(|| {
                    Error::Internal(format!("facet corner {set:?} is not a zonotope vertex"))
                })?;
                labels.push(label);
            }
            labels.sort_unstable();
            // geometric source test: outward normal pairing with e_d negative
            let is_source = psi[d - 1] < Rat::zero();
            out.push((
                FacetRule::Zonotope { generators: gens.clone(), initial, is_source },
                labels,
            ));
        }
    }
    Ok(out)
}

/// Intersection of the configuration's hull with the hyperplane
/// `<functional, x> = level`; the hyperplane must avoid all vertices.
/// Returns the slice configuration and, per new vertex, the edge of the
/// original polytope it came from.
pub fn slice(
    cfg: &PointConfig,
    functional: &RVec,
    level: &Rat,
) -> Result<(PointConfig, Vec<(Label, Label)>), Error> {
    let touching: Vec<Label> = cfg
        .labels
        .iter()
        .zip(&cfg.points)
        .filter(|(_, p)| functional.dot(p) == *level)
        .map(|(&l, _)| l)
        .collect();
    if !touching.is_empty() {
        return Err(Error::NotGeneric { labels: touching });
    }
    let lattice = face_lattice(cfg)?;
    let mut points = Vec::new();
    let mut provenance = Vec::new();
    for &e in lattice.faces_of_dim(1) {
        let vs = &lattice.faces[e].vertices;
        let (a, b) = (vs[0], vs[1]);
        let (pa, pb) = (cfg.point(a), cfg.point(b));
        let (va, vb) = (functional.dot(pa) - level, functional.dot(pb) - level);
        if (va < Rat::zero()) == (vb < Rat::zero()) {
            continue;
        }
        let t = &va / (&va - &vb);
        let point = pa.add(&pb.sub(pa).scale(&t));
        points.push(point);
        provenance.push((a, b));
    }
    if points.is_empty() {
        return Err(Error::Degenerate("hyperplane misses the polytope".into()));
    }
    let out = PointConfig::new(cfg.ambient_dim, points)?;
    Ok((out, provenance))
}

/// Fan triangulation of a face using the lattice structure: recursive cones
/// from the lexicographically smallest vertex.
pub fn triangulate_face(lattice: &FaceLattice, face: FaceId) -> Vec<Vec<Label>> {
    let f = &lattice.faces[face];
    if f.dim <= 0 {
        if f.dim == 0 {
            return vec![f.vertices.clone()];
        }
        return vec![];
    }
    if f.vertices.len() as i64 == f.dim + 1 {
        return vec![f.vertices.clone()];
    }
    let apex = *f.vertices.iter().min().unwrap();
    let mut out = Vec::new();
    for &e in &lattice.covers_down[face] {
        if lattice.faces[e].vertices.contains(&apex) {
            continue;
        }
        for mut simplex in triangulate_face(lattice, e) {
            simplex.push(apex);
            simplex.sort_unstable();
            out.push(simplex);
        }
    }
    out
}

/// `k! * volume` of the simplex spanned by `k+1` points in dimension `k`.
pub fn simplex_volume_scaled(points: &[RVec]) -> Result<Rat, Error> {
    let k = points.len() - 1;
    let rows: Vec<Vec<Rat>> =
        points[1..].iter().map(|p| p.sub(&points[0]).iter().cloned().collect()).collect();
    let m = RMat::from_rows(rows);
    if m.ncols() != k {
        return Err(Error::Dimension(format!(
            "simplex volume needs ambient dimension {k}, got {}",
            m.ncols()
        )));
    }
    let d = exact::det(&m)?;
    Ok(if d < Rat::zero() { -d } else { d })
}

/// `d! * volume` of the convex hull of a full-dimensional configuration,
/// via recursive fan triangulation.
pub fn hull_volume_scaled(cfg: &PointConfig) -> Result<Rat, Error> {
    let d = cfg.affine_dim();
    if d != cfg.ambient_dim {
        return Err(Error::Dimension("hull volume needs a full-dimensional configuration".into()));
    }
    let lattice = face_lattice(cfg)?;
    let mut total = Rat::zero();
    for simplex in triangulate_face(&lattice, lattice.top) {
        let pts: Vec<RVec> = simplex.iter().map(|&l| cfg.point(l).clone()).collect();
        total += simplex_volume_scaled(&pts)?;
    }
    Ok(total)
}

/// Keep only the points that are vertices of the hull; labels are reassigned
/// 1..m in the original order. Returns the new config and the old labels.
pub fn hull_vertices(cfg: &PointConfig) -> Result<(PointConfig, Vec<Label>), Error> {
    let d = cfg.ambient_dim;
    let mut keep = Vec::new();
    for i in 0..cfg.points.len() {
        // a point is a vertex iff strict separation from the others exists
        let mut cs = Vec::new();
        for (j, q) in cfg.points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut coeffs: Vec<Rat> = q.iter().cloned().collect();
            coeffs.push(-Rat::one());
            cs.push(Constraint::lt(RVec::new(coeffs), Rat::zero()));
        }
        let mut coeffs: Vec<Rat> = cfg.points[i].iter().cloned().collect();
        coeffs.push(-Rat::one());
        cs.push(Constraint::eq(RVec::new(coeffs), Rat::zero()));
        if let Feasibility::Feasible(_) = exact::lp_feasible(d + 1, &cs) {
            keep.push(i);
        }
    }
    let points: Vec<RVec> = keep.iter().map(|&i| cfg.points[i].clone()).collect();
    let old_labels: Vec<Label> = keep.iter().map(|&i| cfg.labels[i]).collect();
    let out = PointConfig::new(cfg.ambient_dim, points)?;
    Ok((out, old_labels))
}

/// The explicit 5-simplex whose canonically framed version carries a
/// cellular 1-loop.
pub fn p5_config() -> PointConfig {
    let m = RMat::from_i64_rows(&[
        &[-3, -2, -1, 1, 2, 3],
        &[-1, 1, 0, 0, 1, -1],
        &[-1, 1, 0, 1, -1, 1],
        &[0, 0, 1, 1, 0, 0],
        &[1, 1, 1, 0, 0, 0],
    ]);
    PointConfig::from_columns(&m).expect("static data")
}

/// The 4-dimensional projection of [`p5_config`].
pub fn p4_config() -> PointConfig {
    let m = RMat::from_i64_rows(&[
        &[-3, -2, -1, 1, 2, 3],
        &[-1, 1, 0, 0, 1, -1],
        &[-1, 1, 0, 0, -1, 1],
        &[0, 0, 1, 1, 0, 0],
    ]);
    PointConfig::from_columns(&m).expect("static data")
}

/// The explicit 6-simplex carrying a cellular 2-loop, labels 1..7 for
/// `q_0..q_6`.
pub fn q6_config() -> PointConfig {
    let m = RMat::from_i64_rows(&[
        &[0, 10, 0, 0, 7, 2, 3],
        &[0, 0, 10, 0, 3, 7, 2],
        &[0, 0, 0, 10, 2, 3, 7],
        &[1, 1, 1, 0, 1, 0, 0],
        &[0, 0, 0, 1, 1, 0, 1],
        &[0, 0, 1, 0, 0, 1, 0],
    ]);
    PointConfig::from_columns(&m).expect("static data")
}

/// The frame attached to [`q6_config`], columns `v_1..v_6`.
pub fn q6_frame_matrix() -> RMat {
    RMat::from_i64_rows(&[
        &[-1, 2, 1, 0, 0, 0],
        &[1, 4, 1, 0, 0, 0],
        &[-1, -1, 1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 1, 0],
        &[0, 0, 0, 1, 1, 1],
    ])
}

/// Rational hexagon used by the frame-equivalence and flattening fixtures.
pub fn hexagon_config() -> PointConfig {
    let m = RMat::from_i64_rows(&[&[2, 1, -1, -2, -1, 1], &[0, 2, 2, 0, -2, -2]]);
    PointConfig::from_columns(&m).expect("static data")
}

/// 3-polytope with two hexagonal shadows used by the subdivision fixture;
/// coordinates reconstructed from its rendered vertex list.
pub fn globe_config() -> PointConfig {
    let r = |n: i64, d: i64| exact::ratio(n, d);
    let pts = vec![
        RVec::new(vec![r(-10, 17), r(10, 7), r(-5, 6)]),
        RVec::new(vec![r(10, 17), r(10, 7), r(5, 6)]),
        RVec::new(vec![r(30, 17), r(0, 1), r(0, 1)]),
        RVec::new(vec![r(10, 17), r(0, 1), r(-5, 3)]),
        RVec::new(vec![r(-10, 17), r(-10, 7), r(-5, 6)]),
        RVec::new(vec![r(-30, 17), r(0, 1), r(0, 1)]),
        RVec::new(vec![r(-10, 17), r(0, 1), r(5, 3)]),
        RVec::new(vec![r(10, 17), r(-10, 7), r(5, 6)]),
    ];
    PointConfig::new(3, pts).expect("static data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn assert_vertices_accepts_simplex_and_rejects_barycenter() {
        let simplex = make_family(&FamilySpec::Simplex(2)).unwrap();
        assert!(assert_vertices(&simplex).is_ok());

        let mut points: Vec<RVec> = vec![
            RVec::from_i64(&[0, 0]),
            RVec::from_i64(&[2, 0]),
            RVec::from_i64(&[2, 2]),
            RVec::from_i64(&[0, 2]),
        ];
        points.push(RVec::new(vec![ratio(1, 1), ratio(1, 1)]));
        let cfg = PointConfig::new(2, points).unwrap();
        match assert_vertices(&cfg) {
            Err(Error::NotVertex { label }) => assert_eq!(label, 5),
            other => panic!("expected NotVertex(5), got {other:?}"),
        }
    }

    #[test]
    fn p5_points_are_vertices_of_a_5_simplex() {
        let cfg = p5_config();
        assert_eq!(cfg.affine_dim(), 5);
        assert!(assert_vertices(&cfg).is_ok());
    }

    #[test]
    fn p4_has_affine_rank_4() {
        assert_eq!(p4_config().affine_dim(), 4);
    }

    #[test]
    fn facets_of_triangle_and_octahedron() {
        let simplex = make_family(&FamilySpec::Simplex(2)).unwrap();
        let fs = facets(&simplex).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|f| f.vertices.len() == 2));

        let cross = make_family(&FamilySpec::Cross(3)).unwrap();
        let fs = facets(&cross).unwrap();
        assert_eq!(fs.len(), 8);
        assert!(fs.iter().all(|f| f.vertices.len() == 3));
    }

    #[test]
    fn cyclic_6_4_contains_expected_facet() {
        let cfg = make_family(&FamilySpec::CyclicPolytope { n: 6, d: 4, ts: None }).unwrap();
        let fs = facets(&cfg).unwrap();
        assert!(fs.iter().any(|f| f.vertices == vec![1, 2, 3, 4]));
    }

    #[test]
    fn lattice_counts_segment_cube_simplex() {
        let seg = PointConfig::new(1, vec![RVec::from_i64(&[0]), RVec::from_i64(&[1])]).unwrap();
        let lat = face_lattice(&seg).unwrap();
        assert_eq!(lat.len(), 4);

        let cube = make_family(&FamilySpec::Cube(3)).unwrap();
        let lat = face_lattice(&cube).unwrap();
        assert_eq!(lat.len(), 28);
        assert_eq!(lat.faces_of_dim(0).len(), 8);
        assert_eq!(lat.faces_of_dim(1).len(), 12);
        assert_eq!(lat.faces_of_dim(2).len(), 6);

        let lat = face_lattice(&p5_config()).unwrap();
        assert_eq!(lat.len(), 64);
        for k in 0..=5i64 {
            assert_eq!(lat.faces_of_dim(k).len(), binom(6, (k + 1) as usize));
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn diamond_property_on_cube_and_cyclic() {
        let cube = make_family(&FamilySpec::Cube(3)).unwrap();
        assert!(face_lattice(&cube).unwrap().diamond_property_holds());
        let c = make_family(&FamilySpec::CyclicPolytope { n: 6, d: 3, ts: None }).unwrap();
        assert!(face_lattice(&c).unwrap().diamond_property_holds());
    }

    #[test]
    fn family_construction() {
        let s = make_family(&FamilySpec::Simplex(2)).unwrap();
        assert_eq!(s.points, vec![RVec::from_i64(&[1, 0, 0]), RVec::from_i64(&[0, 1, 0]), RVec::from_i64(&[0, 0, 1])]);

        let c = make_family(&FamilySpec::CyclicPolytope { n: 6, d: 4, ts: None }).unwrap();
        assert_eq!(c.points[2], RVec::from_i64(&[3, 9, 27, 81]));

        // Z(2): {0, xi(1), xi(2), xi(1)+xi(2)}
        let (z2, meta) = cyclic_zonotope(2, 2, None).unwrap();
        assert_eq!(z2.len(), 4);
        let expected: Vec<RVec> = vec![
            RVec::from_i64(&[0, 0]),
            RVec::from_i64(&[1, 1]),
            RVec::from_i64(&[1, 2]),
            RVec::from_i64(&[2, 3]),
        ];
        for e in &expected {
            assert!(z2.points.contains(e));
        }
        assert_eq!(meta.vertex_sets.len(), 4);

        assert!(make_family(&FamilySpec::CyclicPolytope { n: 3, d: 4, ts: None }).is_err());
    }

    #[test]
    fn gale_rules_for_small_cyclic_polytope() {
        let rules =
            combinatorial_faces(&FamilySpec::CyclicPolytope { n: 3, d: 2, ts: None }).unwrap();
        let sources: Vec<_> = rules
            .iter()
            .filter_map(|r| match r {
                FacetRule::Cyclic { vertices, is_source: true } => Some(vertices.clone()),
                _ => None,
            })
            .collect();
        let targets: Vec<_> = rules
            .iter()
            .filter_map(|r| match r {
                FacetRule::Cyclic { vertices, is_source: false } => Some(vertices.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(sources.len(), 2);
        assert_eq!(targets, vec![[1usize, 3].into_iter().collect::<BTreeSet<_>>()]);
    }

    #[test]
    fn zonotope_facet_labels_match_brute_force() {
        let (cfg, meta) = cyclic_zonotope(3, 2, None).unwrap();
        let brute: HashSet<Vec<Label>> =
            facets(&cfg).unwrap().into_iter().map(|f| f.vertices).collect();
        let from_gens: HashSet<Vec<Label>> =
            zonotope_facets(&meta).unwrap().into_iter().map(|(_, l)| l).collect();
        assert_eq!(brute, from_gens);

        let (cfg, meta) = cyclic_zonotope(4, 3, None).unwrap();
        let brute: HashSet<Vec<Label>> =
            facets(&cfg).unwrap().into_iter().map(|f| f.vertices).collect();
        let from_gens: HashSet<Vec<Label>> =
            zonotope_facets(&meta).unwrap().into_iter().map(|(_, l)| l).collect();
        assert_eq!(brute, from_gens);
    }

    #[test]
    fn slice_segment_and_cube() {
        let seg = PointConfig::new(1, vec![RVec::from_i64(&[0]), RVec::from_i64(&[2])]).unwrap();
        let (sliced, prov) = slice(&seg, &RVec::from_i64(&[1]), &rat(1)).unwrap();
        assert_eq!(sliced.len(), 1);
        assert_eq!(prov, vec![(1, 2)]);
        assert_eq!(sliced.points[0], RVec::from_i64(&[1]));

        let cube = make_family(&FamilySpec::Cube(3)).unwrap();
        let (sliced, prov) = slice(&cube, &RVec::from_i64(&[1, 1, 1]), &ratio(1, 2)).unwrap();
        assert_eq!(sliced.len(), 3);
        assert!(assert_vertices(&sliced).is_ok());
        let half = ratio(1, 2);
        for p in &sliced.points {
            let mut coords: Vec<&Rat> = p.iter().collect();
            coords.sort();
            assert_eq!(*coords[2], half);
        }
        // number of slice vertices equals number of crossing edges
        assert_eq!(prov.len(), 3);

        // non-generic hyperplane names the touching vertices
        match slice(&cube, &RVec::from_i64(&[1, 1, 1]), &rat(0)) {
            Err(Error::NotGeneric { labels }) => assert_eq!(labels, vec![1]),
            other => panic!("expected genericity error, got {other:?}"),
        }
    }

    #[test]
    fn volume_of_unit_cube_and_simplex() {
        let cube = make_family(&FamilySpec::Cube(3)).unwrap();
        assert_eq!(hull_volume_scaled(&cube).unwrap(), rat(6)); // 3! * 1

        let tri = PointConfig::new(
            2,
            vec![RVec::from_i64(&[0, 0]), RVec::from_i64(&[1, 0]), RVec::from_i64(&[0, 1])],
        )
        .unwrap();
        assert_eq!(hull_volume_scaled(&tri).unwrap(), rat(1)); // 2! * 1/2
    }

    #[test]
    fn hull_vertex_filter() {
        let pts = vec![
            RVec::from_i64(&[0, 0]),
            RVec::from_i64(&[2, 0]),
            RVec::from_i64(&[0, 2]),
            RVec::from_i64(&[1, 1]), // on the hull boundary but not a vertex
        ];
        let cfg = PointConfig::new(2, pts).unwrap();
        let (hull, old) = hull_vertices(&cfg).unwrap();
        assert_eq!(hull.len(), 3);
        assert_eq!(old, vec![1, 2, 3]);
    }

    #[test]
    fn globe_config_is_a_valid_3_polytope() {
        let cfg = globe_config();
        assert_eq!(cfg.affine_dim(), 3);
        assert!(assert_vertices(&cfg).is_ok());
    }
}
