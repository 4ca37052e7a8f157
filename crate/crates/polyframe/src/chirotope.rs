//! Chirotopes of point configurations, flag chirotopes of framed simplices,
//! the cyclic lift, and higher Bruhat orders with their cubillages.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::traits::{One, Zero};

use crate::error::Error;
use crate::exact::{self, rat, Constraint, RMat, RVec, Rat};
use crate::framing::{FOrientation, FramedPolytope};
use crate::polytope::{veronese_point, Label, PointConfig};
use crate::strings::OrientationData;

/// Sign map on sorted rank-tuples of a ground set `1..=n`; the alternating
/// extension to arbitrary tuples is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    pub n: usize,
    pub rank: usize,
    pub signs: BTreeMap<Vec<Label>, i8>,
    /// whether this chirotope came from a homogenized point configuration
    pub from_points: bool,
}

impl Chirotope {
    /// Sign on a sorted tuple of distinct elements.
    pub fn sign_sorted(&self, tuple: &[Label]) -> i8 {
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        *self.signs.get(tuple).expect("tuple of ground elements")
    }

    /// Alternating extension: zero on repeated indices, sign of the sorting
    /// permutation otherwise.
    pub fn sign(&self, tuple: &[Label]) -> i8 {
        let mut sorted: Vec<Label> = tuple.to_vec();
        // count inversions
        let mut swaps = 0usize;
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                if sorted[i] == sorted[j] {
                    return 0;
                }
                if sorted[i] > sorted[j] {
                    swaps += 1;
                }
            }
        }
        sorted.sort_unstable();
        let base = self.sign_sorted(&sorted);
        if swaps % 2 == 0 {
            base
        } else {
            -base
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.signs.values().all(|&s| s != 0)
    }

    /// Acyclicity is tracked as provenance: configurations of homogenized
    /// points are acyclic by construction.
    pub fn is_acyclic(&self) -> bool {
        self.from_points
    }

    pub fn negate(&self) -> Chirotope {
        Chirotope {
            n: self.n,
            rank: self.rank,
            signs: self.signs.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
            from_points: self.from_points,
        }
    }
}

fn sorted_tuples(n: usize, r: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: Label, n: usize, r: usize, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(1, n, r, &mut cur, &mut out);
    out
}

fn sign_of_rat(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if *x > Rat::zero() {
        1
    } else {
        -1
    }
}

/// Chirotope of a vector configuration: signs of maximal minors.
pub fn chirotope_of_vectors(columns: &[RVec], rank: usize) -> Result<Chirotope, Error> {
    let n = columns.len();
    if columns.iter().any(|c| c.len() != rank) {
        return Err(Error::Dimension("vector arity differs from the chirotope rank".into()));
    }
    let mut signs = BTreeMap::new();
    let mut nonzero = false;
    for tuple in sorted_tuples(n, rank) {
        let cols: Vec<RVec> = tuple.iter().map(|&i| columns[i - 1].clone()).collect();
        let s = sign_of_rat(&exact::det(&RMat::from_cols(&cols))?);
        nonzero |= s != 0;
        signs.insert(tuple, s);
    }
    if !nonzero {
        return Err(Error::Degenerate("chirotope is identically zero".into()));
    }
    Ok(Chirotope { n, rank, signs, from_points: false })
}

/// Chirotope of a point configuration: the chirotope of its homogenization.
pub fn chirotope_of_points(cfg: &PointConfig) -> Result<Chirotope, Error> {
    let hom: Vec<RVec> = cfg
        .points
        .iter()
        .map(|p| {
            let mut coords = vec![Rat::one()];
            coords.extend(p.iter().cloned());
            RVec::new(coords)
        })
        .collect();
    let mut chi = chirotope_of_vectors(&hom, cfg.ambient_dim + 1)?;
    chi.from_points = true;
    Ok(chi)
}

/// One chirotope per projection level of a framed simplex; level k has rank
/// k+1 on the same ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagChirotope {
    pub levels: Vec<Chirotope>,
}

impl FlagChirotope {
    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn ground_size(&self) -> usize {
        self.levels[0].n
    }

    pub fn is_uniform(&self) -> bool {
        self.levels.iter().all(|c| c.is_uniform())
    }

    pub fn is_acyclic(&self) -> bool {
        self.levels.iter().all(|c| c.is_acyclic())
    }
}

/// Homogenized chirotopes of the truncated frame coordinates of a point
/// family, one level per dimension 0..=top.
pub fn flag_of_coords(coords: &[RVec], top: usize) -> Result<FlagChirotope, Error> {
    let mut levels = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let truncated: Vec<RVec> = coords
            .iter()
            .map(|c| {
                let mut h = vec![Rat::one()];
                h.extend(c.truncate(k).iter().cloned());
                RVec::new(h)
            })
            .collect();
        let mut chi = chirotope_of_vectors(&truncated, k + 1)?;
        chi.from_points = true;
        levels.push(chi);
    }
    Ok(FlagChirotope { levels })
}

/// The flag chirotope of a framed simplex: chirotopes of all truncations of
/// the vertex coordinates in the frame basis.
pub fn flag_chirotope(fp: &FramedPolytope) -> Result<FlagChirotope, Error> {
    let d = fp.dim();
    if fp.cfg.len() as i64 != d + 1 {
        return Err(Error::Scope(format!(
            "flag chirotopes are defined for simplices; got {} vertices in dimension {d}",
            fp.cfg.len()
        )));
    }
    fp.require_admissible()?;
    // order coordinates by label so tuple indices and labels agree
    let mut order: Vec<usize> = (0..fp.cfg.len()).collect();
    order.sort_by_key(|&i| fp.cfg.labels[i]);
    let coords: Vec<RVec> = order.iter().map(|&i| fp.coords[i].clone()).collect();
    flag_of_coords(&coords, d as usize)
}

/// Chirotope-backed source/target tables of a framed simplex; faces are the
/// nonzero bitmasks over the ground set.
pub struct SimplexOrientation {
    pub flag: FlagChirotope,
}

impl SimplexOrientation {
    pub fn new(flag: FlagChirotope) -> Result<Self, Error> {
        if !flag.is_uniform() {
            return Err(Error::Degenerate("flag chirotope has zero signs".into()));
        }
        Ok(SimplexOrientation { flag })
    }

    fn mask_labels(mask: usize) -> Vec<Label> {
        (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// Source/target decision for a (k+1)-subset face E of F: membership in
    /// the k-boundary needs all signed minors against outside vertices to
    /// agree strictly; source means that common sign equals the sign of E's
    /// own top minor.
    fn boundary_entry(&self, face_mask: usize, sub_mask: usize, k: i64) -> Option<bool> {
        let sub = Self::mask_labels(sub_mask);
        let chi_high = &self.flag.levels[(k + 1) as usize];
        let mut sign = 0i8;
        for q in Self::mask_labels(face_mask & !sub_mask) {
            // columns (E sorted, q) reordered to sorted: q moves from the
            // last slot to its sorted position
            let mut tuple = sub.clone();
            let j = tuple.iter().position(|&v| v > q).unwrap_or(tuple.len());
            tuple.insert(j, q);
            let moves = (tuple.len() - 1) - j;
            let mut s = chi_high.sign_sorted(&tuple);
            if moves % 2 == 1 {
                s = -s;
            }
            if s == 0 {
                return None;
            }
            if sign == 0 {
                sign = s;
            } else if sign != s {
                return None;
            }
        }
        let reference = self.flag.levels[k as usize].sign_sorted(&sub);
        Some(sign == reference)
    }

    fn extended(&self, face_mask: usize, k: i64, want_source: bool) -> Vec<usize> {
        let mut out = Vec::new();
        let labels = Self::mask_labels(face_mask);
        let take = (k + 1) as usize;
        for sub in subset_masks(&labels, take) {
            if let Some(is_source) = self.boundary_entry(face_mask, sub, k) {
                if is_source == want_source {
                    out.push(sub);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn subset_masks(labels: &[Label], size: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let n = labels.len();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| 1usize << (labels[i] - 1)).sum());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl OrientationData for SimplexOrientation {
    fn dim(&self) -> i64 {
        self.flag.dim() as i64
    }

    fn face_ids(&self) -> Vec<usize> {
        (1..(1usize << self.flag.ground_size())).collect()
    }

    fn face_dim(&self, id: usize) -> i64 {
        id.count_ones() as i64 - 1
    }

    fn face_vertices(&self, id: usize) -> Vec<Label> {
        Self::mask_labels(id)
    }

    fn extended_source(&self, id: usize, k: i64) -> Vec<usize> {
        self.extended(id, k, true)
    }

    fn extended_target(&self, id: usize, k: i64) -> Vec<usize> {
        self.extended(id, k, false)
    }

    fn facet_source(&self, id: usize) -> Vec<usize> {
        let k = self.face_dim(id);
        self.extended(id, k - 1, true)
    }

    fn facet_target(&self, id: usize) -> Vec<usize> {
        let k = self.face_dim(id);
        self.extended(id, k - 1, false)
    }
}

/// Rebuilds the facet partition of every face from the flag chirotope and
/// compares it with the geometric orientation of the framed simplex.
pub fn f_orientation_roundtrip(fp: &FramedPolytope) -> Result<bool, Error> {
    let flag = flag_chirotope(fp)?;
    let data = SimplexOrientation::new(flag)?;
    let mut faces = BTreeMap::new();
    for id in data.face_ids() {
        if data.face_dim(id) < 1 {
            continue;
        }
        let so = data
            .facet_source(id)
            .into_iter()
            .map(|m| data.face_vertices(m))
            .collect::<Vec<_>>();
        let ta = data
            .facet_target(id)
            .into_iter()
            .map(|m| data.face_vertices(m))
            .collect::<Vec<_>>();
        faces.insert(data.face_vertices(id), (so, ta));
    }
    let reconstructed = FOrientation { faces, grounded: true };
    let geometric = crate::framing::f_orientation(fp)?;
    Ok(crate::framing::f_orientation_equal(&reconstructed, &geometric))
}

/// Cyclic lift of a planar configuration in general position: rows 3..n-1
/// hold geometric sequences with doubling bases, grown until the chirotope
/// of every level is forced by the level below.
pub fn cyclic_lift(planar: &PointConfig) -> Result<PointConfig, Error> {
    if planar.ambient_dim != 2 {
        return Err(Error::Dimension("cyclic lift starts from a planar configuration".into()));
    }
    let n = planar.len();
    if n < 3 {
        return Err(Error::Parameter("cyclic lift needs at least 3 points".into()));
    }
    let chi2 = chirotope_of_points(planar)?;
    if !chi2.is_uniform() {
        return Err(Error::Degenerate("planar configuration is not in general position".into()));
    }
    let mut rows: Vec<Vec<Rat>> = vec![
        planar.points.iter().map(|p| p[0].clone()).collect(),
        planar.points.iter().map(|p| p[1].clone()).collect(),
    ];
    // row j (coordinate j, 3 <= j <= n-1) gets entries M^1..M^n, doubling M
    // until level j is determined by level j-1
    for j in 3..=n - 1 {
        let mut base = rat(2);
        'grow: loop {
            let mut row = Vec::with_capacity(n);
            let mut power = base.clone();
            for _ in 0..n {
                row.push(power.clone());
                power *= &base;
            }
            rows.push(row);
            if lift_level_consistent(&rows, j, n)? {
                break 'grow;
            }
            rows.pop();
            base *= rat(2);
        }
    }
    let points: Vec<RVec> =
        (0..n).map(|i| RVec::new(rows.iter().map(|r| r[i].clone()).collect())).collect();
    PointConfig::new(n - 1, points)
}

/// The dominant-term condition at level `j`: for every (j+1)-subset, the
/// homogenized minor at level j has the strict sign of the level j-1 minor
/// of its first j columns.
fn lift_level_consistent(rows: &[Vec<Rat>], j: usize, n: usize) -> Result<bool, Error> {
    for tuple in sorted_tuples(n, j + 1) {
        let high = homogenized_minor(rows, &tuple, j)?;
        let low = homogenized_minor(rows, &tuple[..j], j - 1)?;
        let (sh, sl) = (sign_of_rat(&high), sign_of_rat(&low));
        if sh == 0 || sl == 0 || sh != sl {
            return Ok(false);
        }
    }
    Ok(true)
}

fn homogenized_minor(rows: &[Vec<Rat>], tuple: &[Label], level: usize) -> Result<Rat, Error> {
    let mut m = Vec::with_capacity(level + 1);
    m.push(vec![Rat::one(); tuple.len()]);
    for r in 0..level {
        m.push(tuple.iter().map(|&i| rows[r][i - 1].clone()).collect());
    }
    exact::det(&RMat::from_rows(m))
}

/// A consistent subset of (d+1)-subsets of `[n]`: every packet is hit in a
/// lexicographic prefix or suffix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConsistentSet {
    pub members: BTreeSet<Vec<Label>>,
}

/// The higher Bruhat order `B(n,d)` as an explicit poset.
#[derive(Clone, Debug)]
pub struct BruhatPoset {
    pub n: usize,
    pub d: usize,
    pub elements: Vec<ConsistentSet>,
    /// covers[i] lists j with elements[i] lessdot elements[j]
    pub covers: Vec<Vec<usize>>,
}

fn is_consistent(n: usize, d: usize, members: &BTreeSet<Vec<Label>>) -> bool {
    for m in sorted_tuples(n, d + 2) {
        let packet: Vec<Vec<Label>> = {
            let mut p: Vec<Vec<Label>> = (0..m.len())
                .map(|i| {
                    let mut t = m.clone();
                    t.remove(i);
                    t
                })
                .collect();
            p.sort();
            p
        };
        let hits: Vec<bool> = packet.iter().map(|t| members.contains(t)).collect();
        let count = hits.iter().filter(|&&h| h).count();
        let prefix = hits.iter().take_while(|&&h| h).count() == count;
        let suffix = hits.iter().rev().take_while(|&&h| h).count() == count;
        if !(prefix || suffix) {
            return false;
        }
    }
    true
}

/// Breadth-first enumeration of all consistent sets from the empty set,
/// adding one (d+1)-subset at a time.
pub fn enumerate_bruhat(n: usize, d: usize) -> Result<BruhatPoset, Error> {
    if n > 7 || d > 3 {
        return Err(Error::Budget(format!(
            "higher Bruhat enumeration is capped at n <= 7, d <= 3; got n={n}, d={d}"
        )));
    }
    if d + 1 > n {
        return Err(Error::Parameter("need d+1 <= n".into()));
    }
    let all: Vec<Vec<Label>> = sorted_tuples(n, d + 1);
    let mut index: HashMap<BTreeSet<Vec<Label>>, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut covers: Vec<Vec<usize>> = Vec::new();
    let empty: BTreeSet<Vec<Label>> = BTreeSet::new();
    index.insert(empty.clone(), 0);
    elements.push(ConsistentSet { members: empty });
    covers.push(Vec::new());
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            let current = elements[u].members.clone();
            for k in &all {
                if current.contains(k) {
                    continue;
                }
                let mut bigger = current.clone();
                bigger.insert(k.clone());
                if !is_consistent(n, d, &bigger) {
                    continue;
                }
                let id = match index.get(&bigger) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        index.insert(bigger.clone(), id);
                        elements.push(ConsistentSet { members: bigger });
                        covers.push(Vec::new());
                        next.push(id);
                        id
                    }
                };
                if !covers[u].contains(&id) {
                    covers[u].push(id);
                }
            }
        }
        frontier = next;
    }
    for c in covers.iter_mut() {
        c.sort_unstable();
    }
    Ok(BruhatPoset { n, d, elements, covers })
}

/// A set of cube tiles `(L, A)` of the cyclic zonotope `Z(n,d)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cubillage {
    pub n: usize,
    pub d: usize,
    pub tiles: BTreeSet<(Vec<Label>, Vec<Label>)>,
}

/// `a` is an even gap in `L` when the number of elements of `L` above it is
/// even.
fn is_even_gap(a: Label, l: &[Label]) -> bool {
    l.iter().filter(|&&x| x > a).count() % 2 == 0
}

/// The map from consistent sets to cubillages: each d-subset L of [n]
/// becomes the tile (L, A_L^U) with the displayed membership rule.
pub fn phi_to_cubillage(n: usize, d: usize, u: &ConsistentSet) -> Cubillage {
    let mut tiles = BTreeSet::new();
    for l in sorted_tuples(n, d) {
        let mut a = Vec::new();
        for cand in 1..=n {
            if l.contains(&cand) {
                continue;
            }
            let mut union = l.clone();
            let pos = union.iter().position(|&x| x > cand).unwrap_or(union.len());
            union.insert(pos, cand);
            let in_u = u.members.contains(&union);
            let even = is_even_gap(cand, &l);
            if (in_u && even) || (!in_u && !even) {
                a.push(cand);
            }
        }
        tiles.insert((l, a));
    }
    Cubillage { n, d, tiles }
}

/// Exact verification that the tiles fill `Z(n,d)`: total parallelepiped
/// volume matches and no two tiles share an interior point.
pub fn verify_cubillage(cub: &Cubillage) -> Result<bool, Error> {
    let d = cub.d;
    let gens: Vec<RVec> = (1..=cub.n).map(|i| veronese_point(&rat(i as i64), d)).collect();
    let tile_volume = |l: &[Label]| -> Result<Rat, Error> {
        let cols: Vec<RVec> = l.iter().map(|&i| gens[i - 1].clone()).collect();
        let v = exact::det(&RMat::from_cols(&cols))?;
        Ok(if v < Rat::zero() { -v } else { v })
    };
    let mut total = Rat::zero();
    for l in sorted_tuples(cub.n, d) {
        total += tile_volume(&l)?;
    }
    let mut sum = Rat::zero();
    for (l, _) in &cub.tiles {
        sum += tile_volume(l)?;
    }
    if sum != total {
        return Ok(false);
    }
    let tiles: Vec<&(Vec<Label>, Vec<Label>)> = cub.tiles.iter().collect();
    for i in 0..tiles.len() {
        for j in i + 1..tiles.len() {
            if tiles_overlap(&gens, d, tiles[i], tiles[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Strict interior intersection of two parallelepiped tiles, decided by an
/// exact LP in the two parameter spaces.
fn tiles_overlap(
    gens: &[RVec],
    d: usize,
    a: &(Vec<Label>, Vec<Label>),
    b: &(Vec<Label>, Vec<Label>),
) -> Result<bool, Error> {
    // variables: s (tile a), t (tile b); equations sum_A + sum s_l xi(l) =
    // sum_B + sum t_l xi(l); bounds 0 < s,t < 1
    let nvars = 2 * d;
    let mut cs = Vec::new();
    let offset = |labels: &[Label]| -> RVec {
        let mut acc = RVec::zeros(d);
        for &x in labels {
            acc = acc.add(&gens[x - 1]);
        }
        acc
    };
    let (oa, ob) = (offset(&a.1), offset(&b.1));
    for row in 0..d {
        let mut coeffs = vec![Rat::zero(); nvars];
        for (i, &l) in a.0.iter().enumerate() {
            coeffs[i] = gens[l - 1][row].clone();
        }
        for (i, &l) in b.0.iter().enumerate() {
            coeffs[d + i] = -gens[l - 1][row].clone();
        }
        cs.push(Constraint::eq(RVec::new(coeffs), &ob[row] - &oa[row]));
    }
    for v in 0..nvars {
        let mut lo = vec![Rat::zero(); nvars];
        lo[v] = -Rat::one();
        cs.push(Constraint::lt(RVec::new(lo), Rat::zero()));
        let mut hi = vec![Rat::zero(); nvars];
        hi[v] = Rat::one();
        cs.push(Constraint::lt(RVec::new(hi), Rat::one()));
    }
    Ok(exact::lp_feasible(nvars, &cs).is_feasible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::Frame;
    use crate::polytope::{make_family, moment_point, FamilySpec};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn triangle_orientation_sign() {
        let cfg = PointConfig::new(
            2,
            vec![RVec::from_i64(&[0, 0]), RVec::from_i64(&[1, 0]), RVec::from_i64(&[0, 1])],
        )
        .unwrap();
        let chi = chirotope_of_points(&cfg).unwrap();
        assert_eq!(chi.sign_sorted(&[1, 2, 3]), 1);
        assert!(chi.is_uniform());
        assert!(chi.is_acyclic());
    }

    #[test]
    fn collinear_points_give_zero() {
        let cfg = PointConfig::new(
            2,
            vec![
                RVec::from_i64(&[0, 0]),
                RVec::from_i64(&[1, 1]),
                RVec::from_i64(&[2, 2]),
                RVec::from_i64(&[0, 1]),
            ],
        )
        .unwrap();
        let chi = chirotope_of_points(&cfg).unwrap();
        assert_eq!(chi.sign_sorted(&[1, 2, 3]), 0);
        assert!(!chi.is_uniform());
    }

    #[test]
    fn moment_curve_is_the_alternating_matroid() {
        let pts: Vec<RVec> = (1..=5).map(|t| moment_point(&rat(t), 2)).collect();
        let cfg = PointConfig::new(2, pts).unwrap();
        let chi = chirotope_of_points(&cfg).unwrap();
        for tuple in super::sorted_tuples(5, 3) {
            assert_eq!(chi.sign_sorted(&tuple), 1, "{tuple:?}");
        }
    }

    #[test]
    fn alternating_and_reorientation_properties() {
        let mut rng = StdRng::seed_from_u64(9);
        let pts: Vec<RVec> = (0..6)
            .map(|_| RVec::new((0..3).map(|_| rat(rng.gen_range(-5..=5))).collect()))
            .collect();
        let cfg = match PointConfig::new(3, pts) {
            Ok(c) => c,
            Err(_) => return,
        };
        let chi = chirotope_of_points(&cfg).unwrap();
        // transpositions flip the sign
        assert_eq!(chi.sign(&[2, 1, 3, 4]), -chi.sign(&[1, 2, 3, 4]));
        assert_eq!(chi.sign(&[1, 1, 2, 3]), 0);
        // an orientation-reversing linear map negates the chirotope
        let reflect = RMat::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let reflected = PointConfig::new(
            3,
            cfg.points.iter().map(|p| reflect.mul_vec(p)).collect(),
        )
        .unwrap();
        let chi_r = chirotope_of_points(&reflected).unwrap();
        assert_eq!(chi_r.signs, chi.negate().signs);
    }

    #[test]
    fn one_simplex_flag() {
        let cfg = make_family(&FamilySpec::CyclicPolytope { n: 2, d: 1, ts: None }).unwrap();
        let fp = FramedPolytope::new(cfg, Frame::canonical(1)).unwrap();
        let flag = flag_chirotope(&fp).unwrap();
        assert_eq!(flag.levels.len(), 2);
        assert_eq!(flag.levels[1].sign_sorted(&[1, 2]), 1);
        assert!(flag.is_uniform());
    }

    fn random_framed_simplex(rng: &mut StdRng, d: usize) -> Option<FramedPolytope> {
        let pts: Vec<RVec> = (0..=d)
            .map(|_| RVec::new((0..d).map(|_| rat(rng.gen_range(-9..=9))).collect()))
            .collect();
        let cfg = PointConfig::new(d, pts).ok()?;
        if cfg.affine_dim() != d {
            return None;
        }
        let fp = FramedPolytope::new(cfg, Frame::canonical(d)).ok()?;
        if fp.is_admissible().is_admissible() {
            Some(fp)
        } else {
            None
        }
    }

    #[test]
    fn roundtrip_and_uniformity_on_random_simplices() {
        let mut rng = StdRng::seed_from_u64(2024);
        let mut done = 0;
        while done < 30 {
            let d = rng.gen_range(2..=4usize);
            let fp = match random_framed_simplex(&mut rng, d) {
                Some(fp) => fp,
                None => continue,
            };
            let flag = flag_chirotope(&fp).unwrap();
            assert!(flag.is_uniform(), "admissible framed simplices have uniform flags");
            assert!(f_orientation_roundtrip(&fp).unwrap());
            done += 1;
        }
    }

    #[test]
    fn simplex_tables_match_geometry() {
        let mut rng = StdRng::seed_from_u64(77);
        let mut done = 0;
        while done < 10 {
            let d = rng.gen_range(3..=4usize);
            let fp = match random_framed_simplex(&mut rng, d) {
                Some(fp) => fp,
                None => continue,
            };
            let data = SimplexOrientation::new(flag_chirotope(&fp).unwrap()).unwrap();
            for dim in 1..=fp.dim() {
                for &f in fp.lattice.faces_of_dim(dim) {
                    let labels = fp.lattice.faces[f].vertices.clone();
                    let mask: usize = labels.iter().map(|&l| 1usize << (l - 1)).sum();
                    for k in 0..dim {
                        let mut so_geo: Vec<Vec<Label>> = fp
                            .k_source(f, k)
                            .unwrap()
                            .into_iter()
                            .map(|id| fp.lattice.faces[id].vertices.clone())
                            .collect();
                        let mut so_chi: Vec<Vec<Label>> = data
                            .extended_source(mask, k)
                            .into_iter()
                            .map(SimplexOrientation::mask_labels)
                            .collect();
                        so_geo.sort();
                        so_chi.sort();
                        assert_eq!(so_geo, so_chi, "d={dim} k={k} face={labels:?}");
                    }
                }
            }
            done += 1;
        }
    }

    #[test]
    fn cyclic_lift_projects_back() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut done = 0;
        while done < 5 {
            let pts: Vec<RVec> = (0..5)
                .map(|_| RVec::new((0..2).map(|_| rat(rng.gen_range(-7..=7))).collect()))
                .collect();
            let planar = match PointConfig::new(2, pts) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let chi = match chirotope_of_points(&planar) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if !chi.is_uniform() {
                continue;
            }
            let lift = cyclic_lift(&planar).unwrap();
            assert_eq!(lift.ambient_dim, 4);
            for (orig, lifted) in planar.points.iter().zip(&lift.points) {
                assert_eq!(lifted.truncate(2), *orig);
            }
            // every level's chirotope is forced by the level below
            let flag = flag_of_coords(&lift.points, 4).unwrap();
            for k in 3..=4usize {
                for tuple in super::sorted_tuples(5, k + 1) {
                    let high = flag.levels[k].sign_sorted(&tuple);
                    let low = flag.levels[k - 1].sign_sorted(&tuple[..k]);
                    assert_eq!(high, low, "level {k} tuple {tuple:?}");
                }
            }
            done += 1;
        }
    }

    #[test]
    fn cyclic_lift_of_triangle_is_identity() {
        let pts = vec![
            RVec::from_i64(&[0, 0]),
            RVec::from_i64(&[2, 0]),
            RVec::from_i64(&[1, 3]),
        ];
        let planar = PointConfig::new(2, pts).unwrap();
        let lift = cyclic_lift(&planar).unwrap();
        assert_eq!(lift.points, planar.points);
    }

    #[test]
    fn bruhat_level_one_counts_factorials() {
        let expected = [2usize, 6, 24, 120];
        for (i, n) in (2..=5usize).enumerate() {
            let poset = enumerate_bruhat(n, 1).unwrap();
            assert_eq!(poset.elements.len(), expected[i], "n={n}");
        }
    }

    #[test]
    fn bruhat_4_2_has_eight_elements() {
        let poset = enumerate_bruhat(4, 2).unwrap();
        assert_eq!(poset.elements.len(), 8);
        // the extremes are the empty and the full set
        let sizes: Vec<usize> = poset.elements.iter().map(|c| c.members.len()).collect();
        assert!(sizes.contains(&0));
        assert!(sizes.contains(&4));
    }

    #[test]
    fn phi_extremes_are_the_source_and_target_cubillages() {
        let n = 4;
        let d = 2;
        let poset = enumerate_bruhat(n, d).unwrap();
        let empty = poset.elements.iter().find(|c| c.members.is_empty()).unwrap();
        let full = poset
            .elements
            .iter()
            .max_by_key(|c| c.members.len())
            .unwrap();
        let phi_empty = phi_to_cubillage(n, d, empty);
        let phi_full = phi_to_cubillage(n, d, full);
        for (l, a) in &phi_empty.tiles {
            // source tiles collect exactly the odd gaps
            let expected: Vec<Label> = (1..=n)
                .filter(|&x| !l.contains(&x) && !is_even_gap(x, l))
                .collect();
            assert_eq!(*a, expected);
        }
        for (l, a) in &phi_full.tiles {
            let expected: Vec<Label> =
                (1..=n).filter(|&x| !l.contains(&x) && is_even_gap(x, l)).collect();
            assert_eq!(*a, expected);
        }
    }

    #[test]
    fn all_b42_cubillages_tile() {
        let poset = enumerate_bruhat(4, 2).unwrap();
        let mut seen = BTreeSet::new();
        for u in &poset.elements {
            let cub = phi_to_cubillage(4, 2, u);
            assert!(verify_cubillage(&cub).unwrap());
            seen.insert(cub.tiles.clone());
        }
        // injectivity on B(4,2)
        assert_eq!(seen.len(), poset.elements.len());
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(enumerate_bruhat(9, 2), Err(Error::Budget(_))));
    }
}
