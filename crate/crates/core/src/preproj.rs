//! Degreewise quotients of the path algebra of a doubled quiver by one
//! quadratic relation per vertex: the preprojective algebra `Λ_Q` and the
//! Koszul dual `Z(Γ)^!` of a zigzag algebra. Everything is computed one degree
//! at a time by exact rank computations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, FieldSpec, SpanBuilder};
use crate::pathalg::{paths_between, Path};

use crate::quiver::{DoubledQuiver, Graph, Letter, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientKind {
    /// relation `Σ_α (αα* − α*α)`
    Preprojective,
    /// relation "sum of all 2-cycles at each vertex"
    KoszulDualZigzag,
}

impl std::str::FromStr for QuotientKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "preprojective" => Ok(QuotientKind::Preprojective),
            "koszul-dual" | "koszul-dual-zigzag" => Ok(QuotientKind::KoszulDualZigzag),
            other => Err(Error::InvalidArgument(format!(
                "unknown quotient spec {other:?}"
            ))),
        }
    }
}

/// `𝕜Q̃` modulo the relations `Σ_{x : s(x) = v} w(x)·x x*`, one per vertex `v`.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    doubled: DoubledQuiver,
    weights: Vec<i64>,
    kind: QuotientKind,
}

impl QuadraticAlgebra {
    pub fn preprojective(q: &Quiver) -> Self {
        let doubled = q.double();
        let weights = (0..doubled.arrow_count() as Letter)
            .map(|a| if doubled.is_base(a) { 1 } else { -1 })
            .collect();
        QuadraticAlgebra {
            doubled,
            weights,
            kind: QuotientKind::Preprojective,
        }
    }

    pub fn koszul_dual_zigzag(g: &Graph) -> Self {
        let doubled = g.orient_increasing().double();
        let weights = vec![1; doubled.arrow_count()];
        QuadraticAlgebra {
            doubled,
            weights,
            kind: QuotientKind::KoszulDualZigzag,
        }
    }

    /// The same algebra presented by the negated relation.
    pub fn negated(mut self) -> Self {
        for w in &mut self.weights {
            *w = -*w;
        }
        self
    }

    pub fn doubled(&self) -> &DoubledQuiver {
        &self.doubled
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    /// The relation at `v` as `(first arrow, coefficient)`; the term is `x · x*`.
    pub fn relation_at(&self, v: usize) -> Vec<(Letter, i64)> {
        self.doubled
            .out_arrows(v)
            .iter()
            .map(|&x| (x, self.weights[x as usize]))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.doubled.vertex_count()
    }
}

/// Sorted paths of each length, grouped by endpoints.
pub(crate) struct PathTable {
    /// `[len][i][j]`
    table: Vec<Vec<Vec<Vec<Path>>>>,
}

impl PathTable {
    pub(crate) fn new(quiver: &DoubledQuiver, max_len: usize) -> Self {
        let v = quiver.vertex_count();
        let mut table: Vec<Vec<Vec<Vec<Path>>>> = Vec::with_capacity(max_len + 1);
        table.push(
            (0..v)
                .map(|i| {
                    (0..v)
                        .map(|j| {
                            if i == j {
                                vec![Path::idempotent(i)]
                            } else {
                                Vec::new()
                            }
                        })
                        .collect()
                })
                .collect(),
        );
        for len in 1..=max_len {
            let mut layer = vec![vec![Vec::new(); v]; v];
            for (i, row) in table[len - 1].iter().enumerate() {
                for (k, paths) in row.iter().enumerate() {
                    for p in paths {
                        for &a in quiver.out_arrows(k) {
                            let t = quiver.target(a);
                            let mut letters = p.letters().to_vec();
                            letters.push(a);
                            layer[i][t].push(Path::from_parts(i, t, letters, 0));
                        }
                    }
                }
            }
            for row in &mut layer {
                for paths in row.iter_mut() {
                    paths.sort();
                }
            }
            table.push(layer);
        }
        PathTable { table }
    }

    pub(crate) fn get(&self, i: usize, j: usize, len: usize) -> &[Path] {
        &self.table[len][i][j]
    }
}

/// One graded piece `A^n` of a quotient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedQuotientPiece {
    pub degree: usize,
    pub ambient_dim: usize,
    pub relation_rank: usize,
    pub dimension: usize,
    /// Paths whose classes form a basis, lexicographically least choice.
    #[serde(skip)]
    pub representatives: Vec<Path>,
}

/// Relation vectors of block `e_i A^n e_j`, in the index space `index`.
fn block_relations(
    alg: &QuadraticAlgebra,
    table: &PathTable,
    i: usize,
    j: usize,
    n: usize,
    index: &HashMap<&[Letter], usize>,
) -> Vec<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut word = Vec::with_capacity(n);
    for v in 0..alg.vertex_count() {
        let rel = alg.relation_at(v);
        if rel.is_empty() {
            continue;
        }
        for k in 0..=n - 2 {
            for a in table.get(i, v, k) {
                for b in table.get(v, j, n - 2 - k) {
                    let vec = rel
                        .iter()
                        .map(|&(x, w)| {
                            word.clear();
                            word.extend_from_slice(a.letters());
                            word.push(x);
                            word.push(alg.doubled.star(x));
                            word.extend_from_slice(b.letters());
                            (index[word.as_slice()], w)
                        })
                        .collect();
                    out.push(vec);
                }
            }
        }
    }
    out
}

/// Dimension data for the block `e_i A^n e_j`.
fn block_piece(
    alg: &QuadraticAlgebra,
    table: &PathTable,
    i: usize,
    j: usize,
    n: usize,
    field: FieldSpec,
) -> (usize, usize, Vec<Path>) {
    let ambient = table.get(i, j, n);
    let m = ambient.len();
    // Columns in decreasing lexicographic order so that pivots land on the
    // largest paths and the free columns are the least ones.
    let index: HashMap<&[Letter], usize> = ambient
        .iter()
        .enumerate()
        .map(|(k, p)| (p.letters(), m - 1 - k))
        .collect();
    let mut span = SpanBuilder::new(field, m);
    for r in block_relations(alg, table, i, j, n, &index) {
        span.add(&r);
    }
    let pivots: std::collections::HashSet<usize> = span.pivot_columns().into_iter().collect();
    let reps = ambient
        .iter()
        .enumerate()
        .filter(|(k, _)| !pivots.contains(&(m - 1 - k)))
        .map(|(_, p)| p.clone())
        .collect();
    (m, span.rank(), reps)
}

/// `A^n` for the given quadratic algebra.
pub fn quotient_piece(alg: &QuadraticAlgebra, n: usize, field: FieldSpec) -> GradedQuotientPiece {
    let table = PathTable::new(&alg.doubled, n);
    let v = alg.vertex_count();
    let mut ambient_dim = 0;
    let mut relation_rank = 0;
    let mut representatives = Vec::new();
    for i in 0..v {
        for j in 0..v {
            let (m, r, reps) = block_piece(alg, &table, i, j, n, field);
            ambient_dim += m;
            relation_rank += r;
            representatives.extend(reps);
        }
    }
    representatives.sort();
    GradedQuotientPiece {
        degree: n,
        ambient_dim,
        relation_rank,
        dimension: ambient_dim - relation_rank,
        representatives,
    }
}

/// `Λ_Q^n`: length-`n` paths modulo the span of `a·r·b`.
pub fn lambda_piece(q: &Quiver, n: usize, field: FieldSpec) -> GradedQuotientPiece {
    quotient_piece(&QuadraticAlgebra::preprojective(q), n, field)
}

/// Degree-`n` piece of `Z(Γ)^!`.
pub fn koszul_dual_zigzag_piece(g: &Graph, n: usize, field: FieldSpec) -> GradedQuotientPiece {
    quotient_piece(&QuadraticAlgebra::koszul_dual_zigzag(g), n, field)
}

/// The relation matrix of `A^n` (rows: ambient paths in sorted order; columns: relation generators).
pub fn relation_matrix(
    alg: &QuadraticAlgebra,
    n: usize,
    field: FieldSpec,
) -> Result<(Vec<Path>, ExactMatrix)> {
    let table = PathTable::new(&alg.doubled, n);
    let v = alg.vertex_count();
    let mut ambient = Vec::new();
    for i in 0..v {
        for j in 0..v {
            ambient.extend(table.get(i, j, n).iter().cloned());
        }
    }
    ambient.sort();
    let index: HashMap<&[Letter], usize> = ambient
        .iter()
        .enumerate()
        .map(|(k, p)| (p.letters(), k))
        .collect();
    let mut columns = Vec::new();
    for i in 0..v {
        for j in 0..v {
            columns.extend(block_relations(alg, &table, i, j, n, &index));
        }
    }
    let m = ExactMatrix::from_sparse_columns(field, ambient.len(), &columns)?;
    Ok((ambient, m))
}

/// `dim e_i A^n e_i`.
pub fn cyclic_piece_dim_of(alg: &QuadraticAlgebra, n: usize, i: usize, field: FieldSpec) -> usize {
    let table = PathTable::new(&alg.doubled, n);
    let (m, r, _) = block_piece(alg, &table, i, i, n, field);
    m - r
}

/// `dim e_i Λ^n e_i`.
pub fn cyclic_piece_dim(q: &Quiver, n: usize, i: usize, field: FieldSpec) -> usize {
    cyclic_piece_dim_of(&QuadraticAlgebra::preprojective(q), n, i, field)
}

/// Degree-`n` piece of the trace space `A/[A, A]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracePiece {
    pub degree: usize,
    pub dimension: usize,
    /// Cycles whose classes form a basis, lexicographically least choice.
    #[serde(skip)]
    pub witnesses: Vec<Path>,
}

/// Least rotation of a cyclic word.
pub(crate) fn canonical_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    (0..n)
        .map(|r| {
            let mut w = Vec::with_capacity(n);
            w.extend_from_slice(&letters[r..]);
            w.extend_from_slice(&letters[..r]);
            w
        })
        .min()
        .unwrap_or_default()
}

/// The trace space in one degree, with enough state to test membership.
///
/// Modulo commutators every non-cyclic path vanishes and every cycle equals
/// each of its rotations, so the degree-`n` trace space is spanned by rotation
/// classes of length-`n` cycles. A relation `a·ρ_v·b` is congruent to
/// `ρ_v·(b a)`, so it suffices to impose `ρ_v·c` for length-`(n-2)` cycles `c`
/// at `v`.
pub struct TraceSpace {
    degree: usize,
    classes: Vec<Vec<Letter>>,
    index: HashMap<Vec<Letter>, usize>,
    span: SpanBuilder,
    vertex_count: usize,
}

impl TraceSpace {
    pub fn new(alg: &QuadraticAlgebra, n: usize, field: FieldSpec) -> Self {
        let v = alg.vertex_count();
        let mut span_classes: Vec<Vec<Letter>> = Vec::new();
        if n >= 1 {
            let mut seen = std::collections::HashSet::new();
            for i in 0..v {
                for c in paths_between(&alg.doubled, i, i, n) {
                    let canon = canonical_rotation(c.letters());
                    if seen.insert(canon.clone()) {
                        span_classes.push(canon);
                    }
                }
            }
        }
        span_classes.sort();
        let m = span_classes.len();
        // reversed column order, see `block_piece`
        let index: HashMap<Vec<Letter>, usize> = span_classes
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), m - 1 - k))
            .collect();
        let mut span = SpanBuilder::new(field, m);
        if n >= 2 {
            let mut word = Vec::with_capacity(n);
            for u in 0..v {
                let rel = alg.relation_at(u);
                if rel.is_empty() {
                    continue;
                }
                for c in paths_between(&alg.doubled, u, u, n - 2) {
                    let vec: Vec<(usize, i64)> = rel
                        .iter()
                        .map(|&(x, w)| {
                            word.clear();
                            word.push(x);
                            word.push(alg.doubled.star(x));
                            word.extend_from_slice(c.letters());
                            (index[&canonical_rotation(&word)], w)
                        })
                        .collect();
                    span.add(&vec);
                }
            }
        }
        TraceSpace {
            degree: n,
            classes: span_classes,
            index,
            span,
            vertex_count: v,
        }
    }

    pub fn dimension(&self) -> usize {
        if self.degree == 0 {
            return self.vertex_count;
        }
        self.classes.len() - self.span.rank()
    }

    /// Whether the class of `cycle` is nonzero in the trace space.
    pub fn is_nonzero(&self, cycle: &Path) -> bool {
        if self.degree == 0 {
            return true;
        }
        if cycle.len() != self.degree || !cycle.is_cycle() {
            return false;
        }
        let canon = canonical_rotation(cycle.letters());
        match self.index.get(&canon) {
            Some(&c) => !self.span.contains(&[(c, 1)]),
            None => false,
        }
    }

    pub fn witnesses(&self, quiver: &DoubledQuiver) -> Vec<Path> {
        if self.degree == 0 {
            return (0..self.vertex_count).map(Path::idempotent).collect();
        }
        let m = self.classes.len();
        let pivots: std::collections::HashSet<usize> =
            self.span.pivot_columns().into_iter().collect();
        self.classes
            .iter()
            .enumerate()
            .filter(|(k, _)| !pivots.contains(&(m - 1 - k)))
            .map(|(_, c)| {
                Path::from_parts(
                    quiver.source(c[0]),
                    quiver.target(*c.last().unwrap()),
                    c.clone(),
                    0,
                )
            })
            .collect()
    }

    pub fn to_piece(&self, quiver: &DoubledQuiver) -> TracePiece {
        TracePiece {
            degree: self.degree,
            dimension: self.dimension(),
            witnesses: self.witnesses(quiver),
        }
    }
}

/// `(A/[A, A])^n` for the given quadratic algebra.
pub fn trace_piece_of(alg: &QuadraticAlgebra, n: usize, field: FieldSpec) -> TracePiece {
    TraceSpace::new(alg, n, field).to_piece(&alg.doubled)
}

/// `(Λ_Q/[Λ_Q, Λ_Q])^n`.
pub fn trace_piece(q: &Quiver, n: usize, field: FieldSpec) -> TracePiece {
    trace_piece_of(&QuadraticAlgebra::preprojective(q), n, field)
}

/// Trace dimension of the quotient named by `spec` (`preprojective` or `koszul-dual`).
/// Preprojective algebras of graphs use the sink/source orientation when one
/// exists and the increasing orientation otherwise.
pub fn trace_piece_general(
    spec: &str,
    g: &Graph,
    n: usize,
    field: FieldSpec,
) -> Result<TracePiece> {
    let alg = match spec.parse::<QuotientKind>()? {
        QuotientKind::Preprojective => {
            let q = g
                .orient_bipartite()
                .unwrap_or_else(|_| g.orient_increasing());
            QuadraticAlgebra::preprojective(&q)
        }
        QuotientKind::KoszulDualZigzag => QuadraticAlgebra::koszul_dual_zigzag(g),
    };
    Ok(trace_piece_of(&alg, n, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn sink_source(fam: &str, n: usize) -> Quiver {
        catalog(fam, n).unwrap().orient_bipartite().unwrap()
    }

    #[test]
    fn lambda_a1_and_a2() {
        let a1 = sink_source("A", 1);
        assert_eq!(lambda_piece(&a1, 0, q()).dimension, 1);
        for n in 1..4 {
            assert_eq!(lambda_piece(&a1, n, q()).dimension, 0);
        }
        let a2 = sink_source("A", 2);
        let dims: Vec<usize> = (0..4)
            .map(|n| lambda_piece(&a2, n, q()).dimension)
            .collect();
        assert_eq!(dims, [2, 2, 0, 0]);
    }

    #[test]
    fn cyclic_piece_examples() {
        for (fam, n) in [("A", 3), ("D", 4), ("D~", 4)] {
            let quiver = sink_source(fam, n);
            for i in 0..quiver.vertex_count() {
                assert_eq!(cyclic_piece_dim(&quiver, 0, i, q()), 1);
            }
        }
        assert_eq!(cyclic_piece_dim(&sink_source("A", 2), 2, 0, q()), 0);
        let dt4 = sink_source("D~", 4);
        assert!(cyclic_piece_dim(&dt4, 4, 3, q()) >= 1);
    }

    #[test]
    fn trace_examples() {
        for (fam, n) in [("A", 1), ("A", 4), ("D~", 4)] {
            let quiver = sink_source(fam, n);
            assert_eq!(
                trace_piece(&quiver, 0, q()).dimension,
                quiver.vertex_count()
            );
        }
        let a2 = sink_source("A", 2);
        for n in 2..6 {
            assert_eq!(trace_piece(&a2, n, q()).dimension, 0);
        }
    }

    #[test]
    fn leaf_cycle_is_nonzero_in_trace() {
        let dt4 = sink_source("D~", 4);
        let alg = QuadraticAlgebra::preprojective(&dt4);
        let ts = TraceSpace::new(&alg, 4, q());
        let g = dt4.ginzburg();
        let w = Path::parse(&g, "a4 a1* a1 a4*").unwrap();
        assert!(ts.is_nonzero(&w));
        // non-cycles and wrong degrees are zero
        assert!(!ts.is_nonzero(&Path::parse(&g, "a4 a1*").unwrap()));
    }

    #[test]
    fn relation_sign_does_not_matter() {
        for (fam, n) in [("D", 4), ("D~", 4)] {
            let quiver = sink_source(fam, n);
            let alg = QuadraticAlgebra::preprojective(&quiver);
            let neg = alg.clone().negated();
            for d in 0..7 {
                assert_eq!(
                    quotient_piece(&alg, d, q()).dimension,
                    quotient_piece(&neg, d, q()).dimension
                );
                assert_eq!(
                    trace_piece_of(&alg, d, q()).dimension,
                    trace_piece_of(&neg, d, q()).dimension
                );
            }
        }
    }

    #[test]
    fn relation_matrix_rank_matches_piece() {
        let quiver = sink_source("D", 4);
        let alg = QuadraticAlgebra::preprojective(&quiver);
        for n in 0..6 {
            let (ambient, m) = relation_matrix(&alg, n, q()).unwrap();
            let piece = quotient_piece(&alg, n, q());
            assert_eq!(ambient.len(), piece.ambient_dim);
            assert_eq!(ambient.len() - m.rank(), piece.dimension);
            assert_eq!(piece.representatives.len(), piece.dimension);
        }
    }

    #[test]
    fn trace_witnesses_are_independent() {
        let dt4 = sink_source("D~", 4);
        let alg = QuadraticAlgebra::preprojective(&dt4);
        for n in [4, 6] {
            let ts = TraceSpace::new(&alg, n, q());
            let ws = ts.witnesses(alg.doubled());
            assert_eq!(ws.len(), ts.dimension());
            for w in &ws {
                assert!(ts.is_nonzero(w));
            }
        }
    }

    #[test]
    fn koszul_dual_matches_preprojective_on_trees() {
        for (fam, n) in [("A", 3), ("D", 4), ("D~", 4)] {
            let g = catalog(fam, n).unwrap();
            let quiver = g.orient_bipartite().unwrap();
            for d in 0..7 {
                assert_eq!(
                    koszul_dual_zigzag_piece(&g, d, q()).dimension,
                    lambda_piece(&quiver, d, q()).dimension
                );
                assert_eq!(
                    trace_piece_general("koszul-dual", &g, d, q())
                        .unwrap()
                        .dimension,
                    trace_piece_general("preprojective", &g, d, q())
                        .unwrap()
                        .dimension
                );
            }
        }
        let a1 = catalog("A", 1).unwrap();
        let dims: Vec<usize> = (0..4)
            .map(|d| koszul_dual_zigzag_piece(&a1, d, q()).dimension)
            .collect();
        assert_eq!(dims, [1, 0, 0, 0]);
    }

    #[test]
    fn unknown_spec() {
        let g = catalog("A", 2).unwrap();
        assert!(trace_piece_general("nope", &g, 2, q()).is_err());
        assert_eq!(
            trace_piece_general("preprojective", &g, 3, q())
                .unwrap()
                .dimension,
            0
        );
    }

    #[test]
    fn canonical_rotation_is_least() {
        assert_eq!(canonical_rotation(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_rotation(&[2, 1, 2, 1]), vec![1, 2, 1, 2]);
    }
}
