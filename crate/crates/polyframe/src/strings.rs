//! Cellular k-string graphs, k-loop detection, and inhomogeneous loops.

use std::collections::HashMap;

use crate::error::Error;
use crate::framing::FramedPolytope;
use crate::polytope::Label;

/// Source of extended source/target data, so that loop detection runs both
/// on geometric framed polytopes and on the chirotope-backed simplex tables.
pub trait OrientationData {
    fn dim(&self) -> i64;
    /// ids of the nonempty faces
    fn face_ids(&self) -> Vec<usize>;
    fn face_dim(&self, id: usize) -> i64;
    fn face_vertices(&self, id: usize) -> Vec<Label>;
    fn extended_source(&self, id: usize, k: i64) -> Vec<usize>;
    fn extended_target(&self, id: usize, k: i64) -> Vec<usize>;
    /// source part of the facet partition
    fn facet_source(&self, id: usize) -> Vec<usize>;
    /// target part of the facet partition
    fn facet_target(&self, id: usize) -> Vec<usize>;
}

impl OrientationData for FramedPolytope {
    fn dim(&self) -> i64 {
        FramedPolytope::dim(self)
    }

    fn face_ids(&self) -> Vec<usize> {
        (0..self.lattice.faces.len()).filter(|&f| self.lattice.faces[f].dim >= 0).collect()
    }

    fn face_dim(&self, id: usize) -> i64 {
        self.lattice.faces[id].dim
    }

    fn face_vertices(&self, id: usize) -> Vec<Label> {
        self.lattice.faces[id].vertices.clone()
    }

    fn extended_source(&self, id: usize, k: i64) -> Vec<usize> {
        self.k_source(id, k).expect("admissible framed polytope")
    }

    fn extended_target(&self, id: usize, k: i64) -> Vec<usize> {
        self.k_target(id, k).expect("admissible framed polytope")
    }

    fn facet_source(&self, id: usize) -> Vec<usize> {
        self.face_source_target(id).expect("admissible framed polytope").0
    }

    fn facet_target(&self, id: usize) -> Vec<usize> {
        self.face_source_target(id).expect("admissible framed polytope").1
    }
}

/// The directed graph of cellular k-strings: nodes are faces of dimension
/// greater than k, with an edge F -> G for every k-face in
/// `ta_k(F) /\ so_k(G)`. Edges are stored through their witnessing k-faces,
/// which keeps the representation linear in the size of the tables.
pub struct StringGraph {
    pub k: i64,
    /// face ids of dimension > k
    pub nodes: Vec<usize>,
    /// k-face ids appearing in some extended source or target
    pub witnesses: Vec<usize>,
    /// per witness: nodes whose k-target contains it
    pub in_target_of: Vec<Vec<usize>>,
    /// per witness: nodes whose k-source contains it
    pub in_source_of: Vec<Vec<usize>>,
}

impl StringGraph {
    /// Materialized edge list `(from, to, witness)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (w, &wid) in self.witnesses.iter().enumerate() {
            for &f in &self.in_target_of[w] {
                for &g in &self.in_source_of[w] {
                    out.push((f, g, wid));
                }
            }
        }
        out.sort_unstable();
        out.dedup_by(|a, b| (a.0, a.1) == (b.0, b.1));
        out
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.witnesses.iter().enumerate().any(|(w, _)| {
            self.in_target_of[w].contains(&from) && self.in_source_of[w].contains(&to)
        })
    }
}

/// Builds the k-string graph of an orientation data source.
pub fn build_string_graph<D: OrientationData>(data: &D, k: i64) -> Result<StringGraph, Error> {
    if k < 0 || k > data.dim() - 1 {
        return Err(Error::Parameter(format!(
            "string level k={k} out of range for dimension {}",
            data.dim()
        )));
    }
    let nodes: Vec<usize> =
        data.face_ids().into_iter().filter(|&f| data.face_dim(f) > k).collect();
    let mut witness_index: HashMap<usize, usize> = HashMap::new();
    let mut witnesses = Vec::new();
    let mut in_target_of: Vec<Vec<usize>> = Vec::new();
    let mut in_source_of: Vec<Vec<usize>> = Vec::new();
    for &f in &nodes {
        for w in data.extended_target(f, k) {
            let slot = *witness_index.entry(w).or_insert_with(|| {
                witnesses.push(w);
                in_target_of.push(Vec::new());
                in_source_of.push(Vec::new());
                witnesses.len() - 1
            });
            in_target_of[slot].push(f);
        }
        for w in data.extended_source(f, k) {
            let slot = *witness_index.entry(w).or_insert_with(|| {
                witnesses.push(w);
                in_target_of.push(Vec::new());
                in_source_of.push(Vec::new());
                witnesses.len() - 1
            });
            in_source_of[slot].push(f);
        }
    }
    Ok(StringGraph { k, nodes, witnesses, in_target_of, in_source_of })
}

/// Iterative Tarjan strongly-connected components over an adjacency list.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut sccs = Vec::new();
    let mut counter = 0usize;
    // (node, next child position)
    let mut call_stack: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        call_stack.push((start, 0));
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut child)) = call_stack.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call_stack.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call_stack.pop();
                if let Some(&mut (parent, _)) = call_stack.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(comp);
                }
            }
        }
    }
    sccs
}

/// Deterministic shortest cycle through `start` inside the node set `alive`,
/// exploring neighbors in the given order.
fn shortest_cycle(adj: &[Vec<usize>], alive: &[bool], start: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !alive[w] {
                continue;
            }
            if w == start {
                // reconstruct: start ... v -> start
                let mut path = vec![v];
                let mut cur = v;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Expanded graph used for cycle detection: face nodes followed by witness
/// nodes, edges F -> w for w in ta_k(F) and w -> G for w in so_k(G). A cycle
/// here alternates faces and witnesses and is exactly a cellular k-loop.
struct Expansion {
    /// adjacency over 0..nodes.len()+witnesses.len()
    adj: Vec<Vec<usize>>,
    node_count: usize,
}

fn expansion<D: OrientationData>(
    data: &D,
    graph: &StringGraph,
    max_face_dim: i64,
) -> Expansion {
    let node_pos: HashMap<usize, usize> =
        graph.nodes.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let total = graph.nodes.len() + graph.witnesses.len();
    let mut adj = vec![Vec::new(); total];
    for (w, _) in graph.witnesses.iter().enumerate() {
        let wslot = graph.nodes.len() + w;
        for &f in &graph.in_target_of[w] {
            if data.face_dim(f) <= max_face_dim {
                adj[node_pos[&f]].push(wslot);
            }
        }
        for &g in &graph.in_source_of[w] {
            if data.face_dim(g) <= max_face_dim {
                adj[wslot].push(node_pos[&g]);
            }
        }
    }
    // deterministic neighbor order: faces by vertex list, witnesses likewise
    let key = |slot: usize| -> Vec<Label> {
        if slot < graph.nodes.len() {
            data.face_vertices(graph.nodes[slot])
        } else {
            data.face_vertices(graph.witnesses[slot - graph.nodes.len()])
        }
    };
    for list in adj.iter_mut() {
        list.sort_by_key(|&s| key(s));
        list.dedup();
    }
    Expansion { adj, node_count: graph.nodes.len() }
}

/// Canonical cycle selection: over all nodes lying in nontrivial strongly
/// connected components, take a shortest cycle; ties are broken by the
/// lexicographic order of the rotated vertex-list sequence. `face_of` maps a
/// slot to its face id when the slot stands for a face.
fn canonical_cycle_in<D: OrientationData>(
    data: &D,
    adj: &[Vec<usize>],
    face_of: impl Fn(usize) -> Option<usize>,
) -> Option<Vec<usize>> {
    let sccs = tarjan_scc(adj);
    let mut best: Option<(usize, Vec<Vec<Label>>, Vec<usize>)> = None;
    for comp in sccs.iter().filter(|c| c.len() >= 2) {
        let mut alive = vec![false; adj.len()];
        for &slot in comp {
            alive[slot] = true;
        }
        for &slot in comp {
            if face_of(slot).is_none() {
                continue;
            }
            let path = match shortest_cycle(adj, &alive, slot) {
                Some(p) => p,
                None => continue,
            };
            let faces: Vec<usize> = path.iter().filter_map(|&s| face_of(s)).collect();
            let rotated_ids = {
                let labeled: Vec<(Vec<Label>, usize)> =
                    faces.iter().map(|&f| (data.face_vertices(f), f)).collect();
                canonical_rotation(&labeled)
            };
            let key: Vec<Vec<Label>> = rotated_ids.iter().map(|(v, _)| v.clone()).collect();
            let cycle: Vec<usize> = rotated_ids.into_iter().map(|(_, f)| f).collect();
            let better = match &best {
                None => true,
                Some((len, bkey, _)) => {
                    cycle.len() < *len || (cycle.len() == *len && key < *bkey)
                }
            };
            if better {
                best = Some((cycle.len(), key, cycle));
            }
        }
    }
    best.map(|(_, _, cycle)| cycle)
}

/// Fast existence test for a cellular k-loop: any nontrivial strongly
/// connected component of the string graph.
pub fn has_k_loop_in<D: OrientationData>(data: &D, k: i64) -> Result<bool, Error> {
    let graph = build_string_graph(data, k)?;
    let exp = expansion(data, &graph, data.dim());
    Ok(tarjan_scc(&exp.adj).iter().any(|c| c.len() >= 2))
}

/// Looks for a directed cycle in the k-string graph and returns one
/// canonical representative: loops among faces of the smallest possible
/// dimension are preferred, then shortest, then lexicographically first
/// after rotating the smallest face to the front.
pub fn find_k_loop_in<D: OrientationData>(data: &D, k: i64) -> Result<Option<Vec<usize>>, Error> {
    let graph = build_string_graph(data, k)?;
    let mut found: Option<Vec<usize>> = None;
    for max_dim in k + 1..=data.dim() {
        let exp = expansion(data, &graph, max_dim);
        let nodes = &graph.nodes;
        let cycle = canonical_cycle_in(data, &exp.adj, |slot| {
            if slot < exp.node_count {
                Some(nodes[slot])
            } else {
                None
            }
        });
        if cycle.is_some() {
            found = cycle;
            break;
        }
    }
    let faces = match found {
        Some(f) => f,
        None => return Ok(None),
    };
    // re-validate edge by edge against the tables
    for i in 0..faces.len() {
        let f = faces[i];
        let g = faces[(i + 1) % faces.len()];
        let ta = data.extended_target(f, k);
        let so = data.extended_source(g, k);
        let common: Vec<usize> = ta.iter().filter(|w| so.contains(w)).copied().collect();
        if common.is_empty() {
            return Err(Error::Internal("reported cycle failed re-validation".into()));
        }
        let witness = common[0];
        // the witness must be the intersection of the consecutive faces
        let fv = data.face_vertices(f);
        let gv = data.face_vertices(g);
        let mut inter: Vec<Label> = fv.iter().filter(|v| gv.contains(v)).copied().collect();
        inter.sort_unstable();
        if inter != data.face_vertices(witness) {
            return Err(Error::Internal(
                "witness face differs from the intersection of consecutive faces".into(),
            ));
        }
    }
    Ok(Some(faces))
}

/// Admissibility-checked entry point on framed polytopes.
pub fn find_k_loop(fp: &FramedPolytope, k: i64) -> Result<Option<Vec<usize>>, Error> {
    fp.require_admissible()?;
    find_k_loop_in(fp, k)
}

/// Whether a loop exists at any level; returns the first level with one.
pub fn has_any_loop<D: OrientationData>(data: &D) -> Result<Option<i64>, Error> {
    for k in 0..=data.dim() - 2 {
        if has_k_loop_in(data, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Whether a loop exists at any level, with one canonical cycle.
pub fn any_loop<D: OrientationData>(data: &D) -> Result<Option<(i64, Vec<usize>)>, Error> {
    for k in 0..=data.dim() - 2 {
        if let Some(cycle) = find_k_loop_in(data, k)? {
            return Ok(Some((k, cycle)));
        }
    }
    Ok(None)
}

/// Result of the inhomogeneous-loop analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongLoopVerdict {
    pub strongly_loop_free: bool,
    /// one canonical inhomogeneous cycle when not strongly loop-free
    pub cycle: Option<Vec<usize>>,
}

/// Builds the relation F -> G iff F in so(G) or G in ta(F) over all faces
/// and reports a cycle if its transitive closure is not antisymmetric.
pub fn strong_loop_check_in<D: OrientationData>(data: &D) -> Result<StrongLoopVerdict, Error> {
    let ids = data.face_ids();
    let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut adj = vec![Vec::new(); ids.len()];
    for &g in &ids {
        if data.face_dim(g) < 1 {
            continue;
        }
        for f in data.facet_source(g) {
            adj[pos[&f]].push(pos[&g]); // F in so(G): F -> G
        }
        for f in data.facet_target(g) {
            adj[pos[&g]].push(pos[&f]); // F' in ta(G): G -> F'
        }
    }
    for list in adj.iter_mut() {
        list.sort_by_key(|&s| data.face_vertices(ids[s]));
        list.dedup();
    }
    let cycle = canonical_cycle_in(data, &adj, |slot| Some(ids[slot]));
    match cycle {
        Some(faces) => Ok(StrongLoopVerdict { strongly_loop_free: false, cycle: Some(faces) }),
        None => Ok(StrongLoopVerdict { strongly_loop_free: true, cycle: None }),
    }
}

pub fn strong_loop_check(fp: &FramedPolytope) -> Result<StrongLoopVerdict, Error> {
    fp.require_admissible()?;
    strong_loop_check_in(fp)
}

/// Consistency check of loop-freeness under projection: when the polytope is
/// loop-free, each projection must be loop-free as well. Returns the pairs
/// `(k, level)` where a projection introduced a loop that the original did
/// not have; an empty list means the property holds.
pub fn projected_loop_lift(fp: &FramedPolytope) -> Result<Vec<(usize, i64)>, Error> {
    fp.require_admissible()?;
    let mut violations = Vec::new();
    if has_any_loop(fp)?.is_some() {
        return Ok(violations); // nothing to verify when the base has loops
    }
    for k in 1..=fp.dim() as usize {
        let proj = crate::framing::project(fp, k)?;
        proj.require_admissible()?;
        if let Some(level) = has_any_loop(&proj)? {
            violations.push((k, level));
        }
    }
    Ok(violations)
}

/// Pretty form of a face cycle for reports.
pub fn cycle_vertices<D: OrientationData>(data: &D, cycle: &[usize]) -> Vec<Vec<Label>> {
    cycle.iter().map(|&f| data.face_vertices(f)).collect()
}

/// Rotates `cycle` so that its smallest element comes first, for comparison
/// up to rotation.
pub fn canonical_rotation<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    if cycle.is_empty() {
        return Vec::new();
    }
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| (*v).clone())
        .map(|(i, _)| i)
        .unwrap();
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[min_pos..]);
    out.extend_from_slice(&cycle[..min_pos]);
    out
}
