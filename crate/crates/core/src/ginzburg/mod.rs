//! The 2-Ginzburg dg algebra `Π₂(Q)` with its Adams grading, and the small
//! complex computing `HH^{2,q}(Π₂(Q))`.

mod cone;
mod deform;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

pub use cone::{verify_cone_resolution, ConeModel, ConeReport, ConeWindow, Tensor2, Tensor3};
pub use deform::{first_order_deformation_check, DeformationReport};

use crate::error::Result;
use crate::exactla::{ExactMatrix, FieldSpec, SpanBuilder};
use crate::pathalg::{basis_of_bidegree, paths_between, words_between, BigradedElement, Path};
use crate::preproj::{trace_piece, QuadraticAlgebra};
use crate::quiver::{GinzburgQuiver, Letter, Quiver};
use crate::report::{HHReport, Method};

/// `d(t_v) = Σ_{s(x) = v} ε(x)·x x*` as `(x, ε(x))`.
pub(crate) fn loop_images(quiver: &GinzburgQuiver) -> Vec<Vec<(Letter, i64)>> {
    let alg = QuadraticAlgebra::preprojective(quiver.doubled().base());
    (0..quiver.vertex_count())
        .map(|v| alg.relation_at(v))
        .collect()
}

/// Integer form of the differential, for callers that already hold `loop_images`.
pub(crate) fn differential_with(
    quiver: &GinzburgQuiver,
    images: &[Vec<(Letter, i64)>],
    w: &Path,
) -> Vec<(Path, i64)> {
    let mut out: BTreeMap<Path, i64> = BTreeMap::new();
    let letters = w.letters();
    let mut loops_before = 0;
    for (k, &l) in letters.iter().enumerate() {
        if !quiver.is_loop(l) {
            continue;
        }
        let sign = if loops_before % 2 == 0 { 1 } else { -1 };
        loops_before += 1;
        for &(x, eps) in &images[quiver.loop_vertex(l)] {
            let mut word = Vec::with_capacity(letters.len() + 1);
            word.extend_from_slice(&letters[..k]);
            word.push(x);
            word.push(quiver.doubled().star(x));
            word.extend_from_slice(&letters[k + 1..]);
            let p = Path::from_parts(w.source(), w.target(), word, w.loop_count() - 1);
            *out.entry(p).or_insert(0) += sign * eps;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// `d` on a Ginzburg word: the derivation with `d(x) = 0` on arrows and
/// `d(t_v) = e_v(Σ_α [α, α*])e_v`, picking up `(-1)^{#loops}` of the prefix.
pub fn differential(quiver: &GinzburgQuiver, w: &Path, field: FieldSpec) -> BigradedElement {
    let images = loop_images(quiver);
    BigradedElement::from_int_terms(field, differential_with(quiver, &images, w))
}

/// `d` extended linearly.
pub fn differential_of(quiver: &GinzburgQuiver, x: &BigradedElement) -> BigradedElement {
    let images = loop_images(quiver);
    let field = x.field();
    let mut out = BigradedElement::zero(field);
    for (p, c) in x.terms() {
        for (t, k) in differential_with(quiver, &images, p) {
            out.add_term(t, c.clone() * field.from_i64(k));
        }
    }
    out
}

/// Whether `d(d(w)) = 0` holds for the word `w`.
pub fn d_squared_vanishes(quiver: &GinzburgQuiver, w: &Path) -> bool {
    let images = loop_images(quiver);
    let mut acc: HashMap<Path, i64> = HashMap::new();
    for (p, c) in differential_with(quiver, &images, w) {
        for (t, k) in differential_with(quiver, &images, &p) {
            *acc.entry(t).or_insert(0) += c * k;
        }
    }
    acc.values().all(|&c| c == 0)
}

/// `B^{p,q}` with the matrix of `d: B^{p,q} → B^{p+1,q}`.
#[derive(Clone, Debug)]
pub struct DgPiece {
    pub p: i64,
    pub q: i64,
    pub basis: Vec<Path>,
    pub target_basis: Vec<Path>,
    /// rows: `target_basis`, columns: `basis`
    pub differential: ExactMatrix,
}

pub fn dg_piece(quiver: &GinzburgQuiver, p: i64, q: i64, field: FieldSpec) -> Result<DgPiece> {
    let basis = basis_of_bidegree(quiver, p, q);
    let target_basis = basis_of_bidegree(quiver, p + 1, q);
    let index: HashMap<&Path, usize> = target_basis
        .iter()
        .enumerate()
        .map(|(k, w)| (w, k))
        .collect();
    let images = loop_images(quiver);
    let columns: Vec<Vec<(usize, i64)>> = basis
        .iter()
        .map(|w| {
            differential_with(quiver, &images, w)
                .into_iter()
                .map(|(t, c)| (index[&t], c))
                .collect()
        })
        .collect();
    let differential = ExactMatrix::from_sparse_columns(field, target_basis.len(), &columns)?;
    Ok(DgPiece {
        p,
        q,
        basis,
        target_basis,
        differential,
    })
}

/// `dim H⁰(B^{•,q}) = dim B^{0,q} / d(B^{-1,q})`, which is `dim Λ_Q^q`.
pub fn h0_dim(q: &Quiver, adams: usize, field: FieldSpec) -> usize {
    let g = q.ginzburg();
    let top = basis_of_bidegree(&g, 0, adams as i64);
    let index: HashMap<&Path, usize> = top.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let images = loop_images(&g);
    let mut span = SpanBuilder::new(field, top.len());
    for w in basis_of_bidegree(&g, -1, adams as i64) {
        let col: Vec<(usize, i64)> = differential_with(&g, &images, &w)
            .into_iter()
            .map(|(t, c)| (index[&t], c))
            .collect();
        span.add(&col);
    }
    top.len() - span.rank()
}

/// The three-term complex
/// `Hom(𝕜Q̃₁, B^{0,q+1}) ⊕ ⊕ᵢ eᵢB^{-1,q+2}eᵢ → ⊕ᵢ eᵢB^{0,q+2}eᵢ`
/// whose cokernel is `HH^{2,q}(B, B)`.
#[derive(Clone, Debug, Serialize)]
pub struct HH2Complex {
    pub q: i64,
    /// `(x, f(x))`: the elementary map sending the doubled arrow `x` to a path.
    #[serde(skip)]
    pub dom1: Vec<(Letter, Path)>,
    #[serde(skip)]
    pub dom2: Vec<Path>,
    #[serde(skip)]
    pub codomain: Vec<Path>,
    #[serde(skip)]
    d1: Vec<Vec<(usize, i64)>>,
    #[serde(skip)]
    d2: Vec<Vec<(usize, i64)>>,
    field: FieldSpec,
}

impl HH2Complex {
    pub fn d1(&self) -> ExactMatrix {
        ExactMatrix::from_sparse_columns(self.field, self.codomain.len(), &self.d1)
            .expect("indices in range")
    }

    pub fn d2(&self) -> ExactMatrix {
        ExactMatrix::from_sparse_columns(self.field, self.codomain.len(), &self.d2)
            .expect("indices in range")
    }

    /// Columns of `∂ = (∂₁ | ∂₂)` as sparse integer vectors.
    pub fn columns(&self) -> impl Iterator<Item = &Vec<(usize, i64)>> {
        self.d1.iter().chain(self.d2.iter())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Cokernel dimension together with the lexicographically least codomain
    /// cycles spanning it.
    pub fn cokernel(&self) -> (usize, Vec<Path>) {
        let m = self.codomain.len();
        // reversed order: free columns are the least cycles
        let mut span = SpanBuilder::new(self.field, m);
        for col in self.columns() {
            let rev: Vec<(usize, i64)> = col.iter().map(|&(r, c)| (m - 1 - r, c)).collect();
            span.add(&rev);
        }
        let pivots: HashSet<usize> = span.pivot_columns().into_iter().collect();
        let reps = self
            .codomain
            .iter()
            .enumerate()
            .filter(|(k, _)| !pivots.contains(&(m - 1 - k)))
            .map(|(_, p)| p.clone())
            .collect();
        (m - span.rank(), reps)
    }
}

pub fn hh2_complex(q: &Quiver, adams: i64, field: FieldSpec) -> HH2Complex {
    let g = q.ginzburg();
    let doubled = g.doubled();
    let v = g.vertex_count();
    let mut complex = HH2Complex {
        q: adams,
        dom1: Vec::new(),
        dom2: Vec::new(),
        codomain: Vec::new(),
        d1: Vec::new(),
        d2: Vec::new(),
        field,
    };
    if adams < -2 {
        return complex;
    }
    let n = (adams + 2) as usize;
    complex.codomain = (0..v)
        .flat_map(|i| paths_between(doubled, i, i, n))
        .collect();
    complex.codomain.sort();
    let index: HashMap<&[Letter], usize> = complex
        .codomain
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .map(|(k, p)| (p.letters(), k))
        .collect();
    let cat = |a: &[Letter], b: &[Letter]| -> usize {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        index[w.as_slice()]
    };

    if adams >= -1 {
        for x in 0..doubled.arrow_count() as Letter {
            let xs = doubled.star(x);
            for p in paths_between(doubled, doubled.source(x), doubled.target(x), n - 1) {
                // x = α: [p, α*] = pα* − α*p;  x = α*: [α, p] = αp − pα
                let col = if doubled.is_base(x) {
                    vec![(cat(p.letters(), &[xs]), 1), (cat(&[xs], p.letters()), -1)]
                } else {
                    vec![(cat(&[xs], p.letters()), 1), (cat(p.letters(), &[xs]), -1)]
                };
                complex.d1.push(merge_column(col));
                complex.dom1.push((x, p));
            }
        }
    }

    if adams >= 0 {
        let images = loop_images(&g);
        for i in 0..v {
            for w in words_between(&g, i, i, adams as usize, 1) {
                let col = differential_with(&g, &images, &w)
                    .into_iter()
                    .map(|(t, c)| (index[t.letters()], c))
                    .collect();
                complex.d2.push(merge_column(col));
                complex.dom2.push(w);
            }
        }
    }
    complex
}

fn merge_column(mut col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    col.sort_unstable();
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (r, c) in col {
        match out.last_mut() {
            Some((lr, lc)) if *lr == r => *lc += c,
            _ => out.push((r, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

/// `dim HH^{2,q}(Π₂(Q))` as the cokernel of `∂ = (∂₁, ∂₂)`.
pub fn hh2_dim(q: &Quiver, adams: i64, field: FieldSpec) -> HHReport {
    if adams < -2 {
        return HHReport {
            p: 2,
            q: adams,
            method: Method::Ginzburg,
            dimension: 0,
            representatives: Some(Vec::new()),
        };
    }
    let complex = hh2_complex(q, adams, field);
    let (dimension, reps) = complex.cokernel();
    let g = q.ginzburg();
    HHReport {
        p: 2,
        q: adams,
        method: Method::Ginzburg,
        dimension,
        representatives: Some(reps.iter().map(|p| p.display(&g)).collect()),
    }
}

/// `dim HH^{2,q}` read off the trace space `(Λ_Q/[Λ_Q, Λ_Q])^{q+2}`.
pub fn hh2_dim_by_trace(q: &Quiver, adams: i64, field: FieldSpec) -> HHReport {
    let (dimension, representatives) = if adams < -2 {
        (0, Vec::new())
    } else {
        let piece = trace_piece(q, (adams + 2) as usize, field);
        let g = q.ginzburg();
        (
            piece.dimension,
            piece.witnesses.iter().map(|p| p.display(&g)).collect(),
        )
    };
    HHReport {
        p: 2,
        q: adams,
        method: Method::Trace,
        dimension,
        representatives: Some(representatives),
    }
}
