//! Zigzag algebras `Z(Γ)`: idempotents in degree 0, the arrows of the doubled
//! graph in degree 1, and one class `cᵢ` of 2-cycles per vertex in degree 2.
//! A degree-`k` element has bidegree `(k, −k)`.

mod hochschild;

use serde::Serialize;

pub use hochschild::{
    coboundary_matrix, coboundary_matrix_with, cochain_basis, cochain_differential, hochschild_dim,
    hochschild_dim_with, is_coboundary, is_cocycle, CochainKey, HochschildCochain, SignConvention,
    Tensor,
};

use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, FieldSpec};
use crate::quiver::{DoubledQuiver, Graph, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ZBasis {
    Idempotent(usize),
    Arrow(Letter),
    /// the common class of all 2-cycles at a vertex
    Cycle(usize),
}

/// A finite-dimensional graded algebra presented by structure constants on a
/// basis of paths, with `𝕜Γ₀`-endpoints for every basis element.
#[derive(Clone, Debug)]
pub struct ZigzagAlgebra {
    graph: Graph,
    quiver: DoubledQuiver,
    field: FieldSpec,
    basis: Vec<ZBasis>,
    source: Vec<usize>,
    target: Vec<usize>,
    degree: Vec<usize>,
    /// `table[a * dim + b]`: the product `ab` as `(basis index, coefficient)`
    table: Vec<Vec<(usize, i64)>>,
}

/// `Z(Γ)` for a connected graph without loops or multiple edges.
///
/// `A₁` gives `𝕜[x]/(x²)` with `x = c₁` in degree 2; `A₂` gives the six
/// paths of length ≤ 2. Both fit the general multiplication rule, which keeps
/// one 2-cycle class per vertex.
pub fn build_zigzag(g: &Graph, field: FieldSpec) -> Result<ZigzagAlgebra> {
    let q = match g.orient_bipartite() {
        Ok(q) => q,
        Err(_) => g.orient_increasing(),
    };
    let quiver = q.double();
    let v = g.vertex_count();
    let arrows = quiver.arrow_count();
    let mut basis: Vec<ZBasis> = (0..v).map(ZBasis::Idempotent).collect();
    basis.extend((0..arrows as Letter).map(ZBasis::Arrow));
    basis.extend((0..v).map(ZBasis::Cycle));
    let (mut source, mut target, mut degree) = (Vec::new(), Vec::new(), Vec::new());
    for b in &basis {
        let (s, t, d) = match *b {
            ZBasis::Idempotent(i) => (i, i, 0),
            ZBasis::Arrow(a) => (quiver.source(a), quiver.target(a), 1),
            ZBasis::Cycle(i) => (i, i, 2),
        };
        source.push(s);
        target.push(t);
        degree.push(d);
    }
    let dim = basis.len();
    let cycle = |i: usize| v + arrows + i;
    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            if target[a] != source[b] {
                continue;
            }
            let prod = match (basis[a], basis[b]) {
                (ZBasis::Idempotent(_), _) => Some(b),
                (_, ZBasis::Idempotent(_)) => Some(a),
                (ZBasis::Arrow(x), ZBasis::Arrow(y)) if quiver.star(x) == y => {
                    Some(cycle(source[a]))
                }
                _ => None,
            };
            if let Some(p) = prod {
                table[a * dim + b] = vec![(p, 1)];
            }
        }
    }
    let alg = ZigzagAlgebra {
        graph: g.clone(),
        quiver,
        field,
        basis,
        source,
        target,
        degree,
        table,
    };
    if let Some((a, b, c)) = alg.associativity_defect() {
        return Err(Error::InvalidGraph(format!(
            "multiplication table is not associative at ({}, {}, {})",
            alg.label(a),
            alg.label(b),
            alg.label(c)
        )));
    }
    Ok(alg)
}

impl ZigzagAlgebra {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn quiver(&self) -> &DoubledQuiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ZBasis] {
        &self.basis
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.degree[a]
    }

    /// Basis indices of a given degree.
    pub fn of_degree(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&a| self.degree[a] == d)
    }

    pub fn dims_by_degree(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for &d in &self.degree {
            out[d] += 1;
        }
        out
    }

    pub fn idempotent(&self, i: usize) -> usize {
        i
    }

    pub fn index_of(&self, b: ZBasis) -> Option<usize> {
        self.basis.iter().position(|&x| x == b)
    }

    pub fn label(&self, a: usize) -> String {
        match self.basis[a] {
            ZBasis::Idempotent(i) => format!("e{}", i + 1),
            ZBasis::Arrow(x) => self.quiver.arrow_name(x),
            ZBasis::Cycle(i) => format!("c{}", i + 1),
        }
    }

    pub fn parse_element(&self, name: &str) -> Result<usize> {
        (0..self.dim())
            .find(|&a| self.label(a) == name.trim())
            .ok_or_else(|| Error::Parse(format!("unknown basis element {name:?}")))
    }

    pub fn product(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim() + b]
    }

    /// Overrides one structure constant; used to build deliberately broken tables.
    pub fn set_product(&mut self, a: usize, b: usize, value: Vec<(usize, i64)>) {
        let dim = self.dim();
        self.table[a * dim + b] = value;
    }

    /// Product of linear combinations.
    pub fn multiply(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc = std::collections::BTreeMap::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                for &(p, c) in self.product(a, b) {
                    *acc.entry(p).or_insert(0) += ca * cb * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// First triple of basis elements with `(ab)c ≠ a(bc)`.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b).to_vec();
                for c in 0..n {
                    let bc = self.product(b, c).to_vec();
                    if self.multiply(&ab, &[(c, 1)]) != self.multiply(&[(a, 1)], &bc) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `⟨a, b⟩` = sum of the coefficients of the top classes in `ab`.
    pub fn pairing_matrix(&self) -> Result<ExactMatrix> {
        let n = self.dim();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        self.product(a, b)
                            .iter()
                            .filter(|(p, _)| matches!(self.basis[*p], ZBasis::Cycle(_)))
                            .map(|(_, c)| c)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        ExactMatrix::from_dense(self.field, &rows)
    }

    pub fn pairing_is_nondegenerate(&self) -> bool {
        self.pairing_matrix()
            .map(|m| m.rank() == self.dim())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    fn z(fam: &str, n: usize) -> ZigzagAlgebra {
        build_zigzag(&catalog(fam, n).unwrap(), FieldSpec::rationals()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(z("A", 1).dim(), 2);
        assert_eq!(z("A", 1).dims_by_degree(), [1, 0, 1]);
        assert_eq!(z("A", 2).dim(), 6);
        assert_eq!(z("D", 4).dims_by_degree(), [4, 6, 4]);
        assert_eq!(z("D~", 4).dims_by_degree(), [5, 8, 5]);
    }

    #[test]
    fn a2_has_both_two_cycles() {
        let a = z("A", 2);
        let x = a.parse_element("a1").unwrap();
        let xs = a.parse_element("a1*").unwrap();
        assert_eq!(a.product(x, xs), &[(a.parse_element("c1").unwrap(), 1)]);
        assert_eq!(a.product(xs, x), &[(a.parse_element("c2").unwrap(), 1)]);
        let c2 = a.parse_element("c2").unwrap();
        assert!(a.product(x, c2).is_empty());
    }

    #[test]
    fn d4_relations() {
        // arms meet at the center: αᵢβᵢ = αⱼβⱼ and βᵢαⱼ = 0 for i ≠ j
        let a = z("D", 4);
        let center_loops: Vec<_> = (1..=3)
            .map(|i| {
                let x = a.parse_element(&format!("a{i}")).unwrap();
                let y = a.parse_element(&format!("a{i}*")).unwrap();
                (x, y)
            })
            .collect();
        let cs: Vec<_> = center_loops
            .iter()
            .map(|&(x, y)| a.product(y, x).to_vec())
            .collect();
        assert!(cs.windows(2).all(|w| w[0] == w[1] && !w[0].is_empty()));
        let (x1, _) = center_loops[0];
        let (_, y2) = center_loops[1];
        assert!(a.product(y2, x1).is_empty());
    }

    #[test]
    fn symmetric_pairing() {
        for (fam, n) in [
            ("A", 1),
            ("A", 2),
            ("A", 3),
            ("D", 4),
            ("D~", 4),
            ("E", 6),
            ("A~", 2),
        ] {
            assert!(z(fam, n).pairing_is_nondegenerate(), "{fam}{n}");
        }
    }

    #[test]
    fn positive_part_is_closed_under_products() {
        let a = z("D~", 4);
        for x in (0..a.dim()).filter(|&x| a.degree(x) > 0) {
            for y in (0..a.dim()).filter(|&y| a.degree(y) > 0) {
                for &(p, _) in a.product(x, y) {
                    assert!(a.degree(p) >= 2);
                }
            }
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        let mut a = z("A", 2);
        let x = a.parse_element("a1").unwrap();
        let e2 = a.parse_element("e2").unwrap();
        // (α e₂) α* = 0 but α (e₂ α*) = c₁
        a.set_product(x, e2, vec![]);
        assert!(a.associativity_defect().is_some());
    }
}
