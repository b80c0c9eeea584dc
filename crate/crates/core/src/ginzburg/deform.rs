//! First-order deformations `d'(t_v) = d(t_v) + w·ε` of the Ginzburg differential
//! by a cycle `w` based at `v`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{differential_with, loop_images};
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::pathalg::Path;
use crate::preproj::{QuadraticAlgebra, TraceSpace};
use crate::quiver::{GinzburgQuiver, Letter, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub cycle: String,
    /// Adams degree of the deformation class, `|w| − 2`.
    pub q: i64,
    /// The class of `w` in the trace space is nonzero.
    pub nontrivial: bool,
    /// `d'² = 0` modulo `ε²` on every generator.
    pub squares_to_zero: bool,
}

/// An element `x₀ + x₁ε` over `𝕜[ε]/ε²` with integer coefficients.
type Dual = [BTreeMap<Path, i64>; 2];

struct Deformed<'a> {
    quiver: &'a GinzburgQuiver,
    images: Vec<Vec<(Letter, i64)>>,
    w: &'a Path,
}

impl Deformed<'_> {
    fn apply_word(&self, word: &Path, coeff: i64, order: usize, out: &mut Dual) {
        for (t, c) in differential_with(self.quiver, &self.images, word) {
            *out[order].entry(t).or_insert(0) += coeff * c;
        }
        if order == 1 {
            return;
        }
        // the ε-part: replace one loop t_v, v = base of w, by w
        let letters = word.letters();
        let mut loops_before = 0;
        for (k, &l) in letters.iter().enumerate() {
            if !self.quiver.is_loop(l) {
                continue;
            }
            let sign = if loops_before % 2 == 0 { 1 } else { -1 };
            loops_before += 1;
            if self.quiver.loop_vertex(l) != self.w.source() {
                continue;
            }
            let mut new = letters[..k].to_vec();
            new.extend_from_slice(self.w.letters());
            new.extend_from_slice(&letters[k + 1..]);
            let p = Path::new(self.quiver, new).expect("w is a cycle at the loop vertex");
            *out[1].entry(p).or_insert(0) += sign * coeff;
        }
    }

    fn apply(&self, x: &Dual) -> Dual {
        let mut out: Dual = Default::default();
        for (order, part) in x.iter().enumerate() {
            for (p, &c) in part {
                self.apply_word(p, c, order, &mut out);
            }
        }
        for part in &mut out {
            part.retain(|_, c| *c != 0);
        }
        out
    }
}

pub fn first_order_deformation_check(
    q: &Quiver,
    w: &Path,
    field: FieldSpec,
) -> Result<DeformationReport> {
    let g = q.ginzburg();
    if w.loop_count() > 0 || !w.is_cycle() || w.is_empty() {
        return Err(Error::NotACycle(w.display(&g)));
    }
    if w.len() <= 2 {
        return Err(Error::InvalidArgument(format!(
            "deformation cycle must have length > 2, got {}",
            w.len()
        )));
    }
    let alg = QuadraticAlgebra::preprojective(q);
    let nontrivial = TraceSpace::new(&alg, w.len(), field).is_nonzero(w);

    let def = Deformed {
        quiver: &g,
        images: loop_images(&g),
        w,
    };
    let mut squares_to_zero = true;
    for l in 0..g.letter_count() as Letter {
        let gen = Path::new(&g, vec![l])?;
        let mut x: Dual = Default::default();
        x[0].insert(gen, 1);
        let dd = def.apply(&def.apply(&x));
        if dd.iter().any(|part| !part.is_empty()) {
            squares_to_zero = false;
        }
    }
    Ok(DeformationReport {
        cycle: w.display(&g),
        q: w.len() as i64 - 2,
        nontrivial,
        squares_to_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    fn quiver(fam: &str, n: usize) -> Quiver {
        catalog(fam, n).unwrap().orient_bipartite().unwrap()
    }

    #[test]
    fn extended_d4_cycle_is_nontrivial() {
        let q = quiver("D~", 4);
        let g = q.ginzburg();
        let w = Path::parse(&g, "a4 a1* a1 a4*").unwrap();
        let r = first_order_deformation_check(&q, &w, FieldSpec::rationals()).unwrap();
        assert!(r.nontrivial && r.squares_to_zero);
        assert_eq!(r.q, 2);
    }

    #[test]
    fn short_or_open_paths_are_rejected() {
        let q = quiver("A", 2);
        let g = q.ginzburg();
        let w = Path::parse(&g, "a1 a1*").unwrap();
        assert!(first_order_deformation_check(&q, &w, FieldSpec::rationals()).is_err());
        let w = Path::parse(&g, "a1").unwrap();
        assert!(matches!(
            first_order_deformation_check(&q, &w, FieldSpec::rationals()),
            Err(Error::NotACycle(_))
        ));
    }

    #[test]
    fn d4_cycles_are_trivial_over_q() {
        let q = quiver("D", 4);
        let g = q.ginzburg();
        for i in 0..4 {
            for w in crate::pathalg::cycles_at(g.doubled(), i, 4) {
                let r = first_order_deformation_check(&q, &w, FieldSpec::rationals()).unwrap();
                assert!(!r.nontrivial && r.squares_to_zero);
            }
        }
    }
}
