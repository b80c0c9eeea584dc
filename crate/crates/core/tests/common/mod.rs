//! Checks shared by the structural suite and the acceptance run.

#![allow(dead_code)]

use zigzag_hh::exactla::{FieldSpec, Scalar};
use zigzag_hh::ginzburg::d_squared_vanishes;
use zigzag_hh::pathalg::{basis_of_bidegree, cycles_at, BigradedElement, Path};
use zigzag_hh::quiver::{catalog, GinzburgQuiver, Quiver};
use zigzag_hh::zigzag::{build_zigzag, coboundary_matrix, ZigzagAlgebra};

pub fn bipartite(fam: &str, n: usize) -> Quiver {
    catalog(fam, n).unwrap().orient_bipartite().unwrap()
}

pub fn zigzag(fam: &str, n: usize, f: FieldSpec) -> ZigzagAlgebra {
    build_zigzag(&catalog(fam, n).unwrap(), f).unwrap()
}

/// Number of words of Adams degree `≤ top` on which `d² = 0`, or the first failure.
pub fn d_squared_on_words(g: &GinzburgQuiver, top: i64) -> Result<usize, String> {
    let mut checked = 0;
    for adams in 0..=top {
        for p in -(adams / 2)..=0 {
            for w in basis_of_bidegree(g, p, adams) {
                if !d_squared_vanishes(g, &w) {
                    return Err(w.display(g));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `δ_p ∘ δ_{p−1} = 0`, checked column by column.
pub fn composite_vanishes(alg: &ZigzagAlgebra, p: i64, q: i64) -> bool {
    let (first, second) = (
        coboundary_matrix(alg, p - 1, q).unwrap(),
        coboundary_matrix(alg, p, q).unwrap(),
    );
    if first.cols() == 0 || second.cols() == 0 || first.rows() == 0 {
        return true;
    }
    (0..first.cols()).all(|c| {
        let col: Vec<Scalar> = (0..first.rows()).map(|r| first.get(r, c)).collect();
        second.mul_vec(&col).unwrap().iter().all(|x| x.is_zero())
    })
}

fn rotate(g: &GinzburgQuiver, w: &Path, j: usize) -> Path {
    let l = w.letters();
    Path::new(g, [&l[j..], &l[..j]].concat()).unwrap()
}

/// `[x₁⋯x_p, x_{p+1}⋯x_n] = Σ_{j ≤ p} [x_j, x_{j+1}⋯x_n x₁⋯x_{j−1}]` for every
/// cyclic word of length `2..=max_len` and every split. Returns the number of
/// (word, split) pairs checked.
pub fn cyclic_identity(g: &GinzburgQuiver, max_len: usize) -> Result<usize, String> {
    let f = FieldSpec::rationals();
    let mut checked = 0;
    for len in 2..=max_len {
        for v in 0..g.vertex_count() {
            for w in cycles_at(g.doubled(), v, len) {
                for p in 1..len {
                    let u = BigradedElement::from_path(f, w.slice(g, 0, p));
                    let rest = BigradedElement::from_path(f, w.slice(g, p, len));
                    let lhs = u.commutator(&rest).unwrap();
                    let mut rhs = BigradedElement::zero(f);
                    for j in 0..p {
                        let r = rotate(g, &w, j);
                        let x = BigradedElement::from_path(f, r.slice(g, 0, 1));
                        let tail = BigradedElement::from_path(f, r.slice(g, 1, len));
                        rhs = rhs.add(&x.commutator(&tail).unwrap()).unwrap();
                    }
                    if lhs != rhs {
                        return Err(format!("{} split at {p}", w.display(g)));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
