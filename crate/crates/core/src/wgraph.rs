//! Graphs on a left cell and the generator matrices they induce.
//!
//! The K-L graph joins comparable `x, w` in the cell with weight `μ[x, w]`
//! whenever it is nonzero. The L-S graph joins weak left covers inside the
//! cell and every pair reachable from one by simultaneous cell-preserving
//! Knuth operators, all with weight 1.
//!
//! [`action_matrix`] is the `q = 1` specialization of the W-graph action:
//! for `s ∈ D_L(x)` column `x` is `-e_x`, otherwise it is
//! `e_x + Σ μ[x, y] e_y` over neighbours `y` with `s ∈ D_L(y)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::bruhat::{le, weak_left_covers};
use crate::kl::{KlEngine, KlError};
use crate::perm::Permutation;
use crate::rsk::knuth_applicable;
use crate::scalar::Coefficient;

/// Weighted undirected graph on the elements of a left cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellGraph<C> {
    vertices: Vec<Permutation>,
    /// Keys are index pairs `(i, j)` with `i < j`.
    edges: BTreeMap<(usize, usize), C>,
}

impl<C: Coefficient> CellGraph<C> {
    /// Sorts and dedups the vertices; no edges.
    pub fn empty(mut vertices: Vec<Permutation>) -> Self {
        vertices.sort();
        vertices.dedup();
        CellGraph {
            vertices,
            edges: BTreeMap::new(),
        }
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn index_of(&self, w: &Permutation) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Permutation, &Permutation, &C)> {
        self.edges
            .iter()
            .map(|(&(i, j), c)| (&self.vertices[i], &self.vertices[j], c))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, x: &Permutation, w: &Permutation) -> C {
        match (self.index_of(x), self.index_of(w)) {
            (Some(i), Some(j)) if i != j => self
                .edges
                .get(&(i.min(j), i.max(j)))
                .cloned()
                .unwrap_or_else(C::zero),
            _ => C::zero(),
        }
    }

    fn add_edge(&mut self, i: usize, j: usize, weight: C) -> bool {
        self.edges.insert((i.min(j), i.max(j)), weight).is_none()
    }

    /// Neighbour lists by vertex index.
    fn adjacency(&self) -> Vec<Vec<(usize, C)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (&(i, j), c) in &self.edges {
            adj[i].push((j, c.clone()));
            adj[j].push((i, c.clone()));
        }
        adj
    }

    /// Same vertex set and identical weighted edges.
    pub fn same_edges(&self, other: &CellGraph<C>) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

/// Vertex list, a blank line, then one `x w weight` line per edge.
impl<C: Coefficient> fmt::Display for CellGraph<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "{v}")?;
        }
        writeln!(f)?;
        for (x, w, c) in self.edges() {
            writeln!(f, "{x} {w} {c}")?;
        }
        Ok(())
    }
}

/// Edges weighted by the symmetric μ over all comparable pairs of `cell`.
pub fn kl_graph<C: Coefficient>(
    cell: &[Permutation],
    engine: &KlEngine<C>,
) -> Result<CellGraph<C>, KlError> {
    let mut graph = CellGraph::empty(cell.to_vec());
    let vertices = &graph.vertices;
    for v in vertices.iter().skip(1) {
        crate::perm::check_degrees(&vertices[0], v)?;
    }
    let found: Vec<((usize, usize), C)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..vertices.len()).filter_map(move |j| {
                let (a, b) = (&vertices[i], &vertices[j]);
                let m = if le(a, b) {
                    engine.mu_unchecked(a, b)
                } else if le(b, a) {
                    engine.mu_unchecked(b, a)
                } else {
                    return None;
                };
                (!m.is_zero()).then_some(((i, j), m))
            })
        })
        .collect();
    graph.edges.extend(found);
    Ok(graph)
}

/// Weak left covers in `cell`, closed under simultaneous Knuth operators.
pub fn ls_graph<C: Coefficient>(cell: &[Permutation]) -> CellGraph<C> {
    let mut graph = CellGraph::empty(cell.to_vec());
    let index: HashMap<&Permutation, usize> = graph
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut queue: VecDeque<(usize, usize)> = weak_left_covers(&graph.vertices)
        .iter()
        .map(|(x, w)| (index[x], index[w]))
        .collect();
    let mut found: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    while let Some((i, j)) = queue.pop_front() {
        let key = (i.min(j), i.max(j));
        if !seen.insert(key) {
            continue;
        }
        found.push(key);
        let (x, w) = (&graph.vertices[i], &graph.vertices[j]);
        for k in 0..x.degree().saturating_sub(2) {
            if knuth_applicable(k, x) && knuth_applicable(k, w) {
                let (lx, lw) = (crate::rsk::star(k, x), crate::rsk::star(k, w));
                if let (Some(&a), Some(&b)) = (index.get(&lx), index.get(&lw)) {
                    queue.push_back((a, b));
                }
            }
        }
    }
    for (i, j) in found {
        graph.add_edge(i, j, C::one());
    }
    graph
}

/// Dense square matrix over a cell's vertex order, acting on columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix<C> {
    pub generator: usize,
    dim: usize,
    entries: Vec<C>,
}

impl<C: Coefficient> GeneratorMatrix<C> {
    fn zeros(generator: usize, dim: usize) -> Self {
        GeneratorMatrix {
            generator,
            dim,
            entries: vec![C::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &C {
        &self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: C) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn trace(&self) -> C {
        (0..self.dim).fold(C::zero(), |acc, i| acc.add_exact(self.get(i, i)))
    }

    pub fn mul(&self, other: &Self) -> Vec<C> {
        let n = self.dim;
        let mut out = vec![C::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out[i * n + j] = out[i * n + j].add_exact(&a.mul_exact(b));
                    }
                }
            }
        }
        out
    }

    fn times(&self, entries: &[C]) -> Vec<C> {
        let tmp = GeneratorMatrix {
            generator: self.generator,
            dim: self.dim,
            entries: entries.to_vec(),
        };
        self.mul(&tmp)
    }
}

impl<C: Coefficient> fmt::Display for GeneratorMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.dim.max(1)) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn action_matrix<C: Coefficient>(graph: &CellGraph<C>, s: usize) -> GeneratorMatrix<C> {
    let dim = graph.vertices.len();
    let mut m = GeneratorMatrix::zeros(s, dim);
    let adj = graph.adjacency();
    for (x, w) in graph.vertices.iter().enumerate() {
        if w.has_left_descent(s) {
            m.set(x, x, C::one().neg_exact());
            continue;
        }
        m.set(x, x, C::one());
        for (y, weight) in &adj[x] {
            if graph.vertices[*y].has_left_descent(s) {
                m.set(*y, x, weight.clone());
            }
        }
    }
    m
}

/// One matrix per generator `s_0 .. s_{n-2}`.
pub fn action_matrices<C: Coefficient>(graph: &CellGraph<C>) -> Vec<GeneratorMatrix<C>> {
    let n = graph.vertices.first().map_or(0, Permutation::degree);
    (0..n.saturating_sub(1))
        .map(|s| action_matrix(graph, s))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `A(s)^2 = I`.
    Involution,
    /// `A(s)A(t) = A(t)A(s)` for `|s - t| >= 2`.
    Commutation,
    /// `A(s)A(t)A(s) = A(t)A(s)A(t)` for `|s - t| = 1`.
    Braid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure<C> {
    pub relation: Relation,
    pub s: usize,
    pub t: usize,
    pub row: usize,
    pub col: usize,
    pub left: C,
    pub right: C,
}

impl<C: Coefficient> fmt::Display for RelationFailure<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} s{} s{}: entry ({}, {}) is {} on the left, {} on the right",
            self.relation, self.s, self.t, self.row, self.col, self.left, self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationReport<C> {
    pub checked: usize,
    pub failures: Vec<RelationFailure<C>>,
}

impl<C> RelationReport<C> {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the Coxeter relations of `S_n` entrywise; `matrices[i]` must be
/// the matrix of `s_i`.
pub fn check_relations<C: Coefficient>(matrices: &[GeneratorMatrix<C>]) -> RelationReport<C> {
    let mut report = RelationReport {
        checked: 0,
        failures: Vec::new(),
    };
    let mut compare = |relation, s, t, left: Vec<C>, right: Vec<C>, dim: usize| {
        report.checked += 1;
        for (idx, (l, r)) in left.into_iter().zip(right).enumerate() {
            if l != r {
                report.failures.push(RelationFailure {
                    relation,
                    s,
                    t,
                    row: idx / dim.max(1),
                    col: idx % dim.max(1),
                    left: l,
                    right: r,
                });
            }
        }
    };
    for a in matrices {
        let dim = a.dim;
        let identity: Vec<C> = (0..dim * dim)
            .map(|i| if i / dim == i % dim { C::one() } else { C::zero() })
            .collect();
        compare(Relation::Involution, a.generator, a.generator, a.mul(a), identity, dim);
    }
    for (i, a) in matrices.iter().enumerate() {
        for b in &matrices[i + 1..] {
            let dim = a.dim;
            if b.generator.abs_diff(a.generator) >= 2 {
                compare(Relation::Commutation, a.generator, b.generator, a.mul(b), b.mul(a), dim);
            } else {
                let aba = a.times(&b.mul(a));
                let bab = b.times(&a.mul(b));
                compare(Relation::Braid, a.generator, b.generator, aba, bab, dim);
            }
        }
    }
    report
}
