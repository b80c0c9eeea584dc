use rayon::prelude::*;
use zigzag_hh::ainfty::{check_stasheff, class_of, rotation_m4};
use zigzag_hh::exactla::FieldSpec;
use zigzag_hh::ginzburg::{first_order_deformation_check, hh2_dim, hh2_dim_by_trace};
use zigzag_hh::preproj::{lambda_piece, trace_piece};
use zigzag_hh::quiver::{Graph, Quiver};
use zigzag_hh::report::{HHReport, Method};
use zigzag_hh::zigzag::{build_zigzag, hochschild_dim, is_coboundary, is_cocycle};

use crate::output::*;
use crate::spec::{CliError, JobSpec, MethodChoice};

/// Largest `q` the bar-complex method is run for; cochain spaces grow
/// like `dim Z^(q+2)`.
pub const ZIGZAG_Q_MAX: i64 = 12;

/// Consecutive zero degrees after which `Λ` is flagged finite-dimensional
/// (it is generated in degree 1, so two would already suffice).
const ZERO_RUN: usize = 3;

pub fn preproj(job: &JobSpec) -> Result<PreprojOutput, CliError> {
    let field = job.field()?;
    let g = job.resolve_graph()?;
    let quiver = job.resolve_quiver(&g)?;
    let bound = job
        .max
        .ok_or_else(|| CliError::Invalid("--max is required".into()))?;
    let doubled = quiver.ginzburg();
    let results: Vec<PreprojRow> = (0..=bound)
        .into_par_iter()
        .map(|n| {
            let trace = trace_piece(&quiver, n, field);
            PreprojRow {
                n,
                lambda: lambda_piece(&quiver, n, field).dimension,
                trace: trace.dimension,
                witnesses: trace
                    .witnesses
                    .iter()
                    .map(|p| p.display(&doubled))
                    .collect(),
            }
        })
        .collect();
    let finite_from = results
        .windows(ZERO_RUN)
        .find(|w| w.iter().all(|r| r.lambda == 0))
        .map(|w| w[0].n);
    let verdict = match finite_from {
        Some(n) => format!("finite-dimensional: Λ^n = 0 for n ≥ {n}"),
        None => {
            let nonzero: Vec<String> = results
                .iter()
                .filter(|r| r.lambda > 0)
                .map(|r| r.n.to_string())
                .collect();
            format!(
                "nonzero in degrees {{{}}} up to truncation {bound}; no finiteness detected",
                nonzero.join(", ")
            )
        }
    };
    Ok(PreprojOutput {
        job: job.clone(),
        results,
        finite_from,
        bound,
        verdict,
    })
}

fn methods(choice: MethodChoice) -> Vec<Method> {
    match choice {
        MethodChoice::Ginzburg => vec![Method::Ginzburg],
        MethodChoice::Trace => vec![Method::Trace],
        MethodChoice::Zigzag => vec![Method::Zigzag],
        MethodChoice::All => Method::ALL.to_vec(),
    }
}

/// Why `method` cannot be run on `g` at `q`, if it cannot.
fn inapplicable(method: Method, g: &Graph, q: i64) -> Option<String> {
    match method {
        Method::Zigzag if !g.is_tree() => Some(format!(
            "the zigzag method needs a tree; {} has a cycle",
            g.label()
        )),
        Method::Zigzag if q > ZIGZAG_Q_MAX => Some(format!(
            "the zigzag method is limited to q ≤ {ZIGZAG_Q_MAX}"
        )),
        _ => None,
    }
}

fn run(
    method: Method,
    quiver: &Quiver,
    g: &Graph,
    q: i64,
    field: FieldSpec,
) -> Result<HHReport, CliError> {
    Ok(match method {
        Method::Ginzburg => hh2_dim(quiver, q, field),
        Method::Trace => hh2_dim_by_trace(quiver, q, field),
        Method::Zigzag => hochschild_dim(&build_zigzag(g, field)?, 2, q),
    })
}

fn row(r: HHReport) -> HHRow {
    HHRow {
        p: r.p,
        q: r.q,
        method: r.method,
        dim: r.dimension,
        witnesses: r.representatives,
    }
}

/// Every (q, method) job, run in parallel, gathered in (q, method) order.
fn hh_rows(
    jobs: &[(i64, Method)],
    quiver: &Quiver,
    g: &Graph,
    field: FieldSpec,
) -> Result<Vec<HHRow>, CliError> {
    jobs.par_iter()
        .map(|&(q, m)| run(m, quiver, g, q, field).map(row))
        .collect()
}

fn agreement(rows: &[HHRow]) -> bool {
    rows.iter()
        .all(|a| rows.iter().filter(|b| b.q == a.q).all(|b| b.dim == a.dim))
}

pub fn hh2(job: &JobSpec) -> Result<HHOutput, CliError> {
    let field = job.field()?;
    let g = job.resolve_graph()?;
    let quiver = job.resolve_quiver(&g)?;
    let (lo, hi) = job
        .q
        .ok_or_else(|| CliError::Invalid("--q is required".into()))?;
    let choice = job.method.unwrap_or(MethodChoice::Ginzburg);
    let mut notes = Vec::new();
    let mut jobs = Vec::new();
    for q in lo..=hi {
        for m in methods(choice) {
            match inapplicable(m, &g, q) {
                None => jobs.push((q, m)),
                Some(why) if choice == MethodChoice::All => {
                    if !notes.contains(&why) {
                        notes.push(why);
                    }
                }
                Some(why) => return Err(CliError::Inapplicable(why)),
            }
        }
    }
    let results = hh_rows(&jobs, &quiver, &g, field)?;
    let agreement = (choice == MethodChoice::All).then(|| agreement(&results));
    Ok(HHOutput {
        job: job.clone(),
        results,
        agreement,
        bound: hi,
        notes,
    })
}

pub fn classify(job: &JobSpec) -> Result<ClassifyOutput, CliError> {
    let field = job.field()?;
    let g = job.resolve_graph()?;
    if !g.is_bipartite() {
        return Err(CliError::Inapplicable(format!(
            "{} is not bipartite, so its zigzag algebra is not Koszul dual to a preprojective algebra",
            g.label()
        )));
    }
    let quiver = job.resolve_quiver(&g)?;
    let bound = job
        .max
        .ok_or_else(|| CliError::Invalid("--max is required".into()))? as i64;
    let jobs: Vec<(i64, Method)> = (1..=bound)
        .flat_map(|q| [(q, Method::Ginzburg), (q, Method::Trace)])
        .collect();
    let results = hh_rows(&jobs, &quiver, &g, field)?;
    let agreement = agreement(&results);
    let mut nonzero_q: Vec<i64> = results.iter().filter(|r| r.dim > 0).map(|r| r.q).collect();
    nonzero_q.dedup();

    let deformation = match nonzero_q.first() {
        None => None,
        Some(&q) => {
            let piece = trace_piece(&quiver, (q + 2) as usize, field);
            match piece.witnesses.first() {
                None => None,
                Some(w) => {
                    let r = first_order_deformation_check(&quiver, w, field)?;
                    Some(DeformationRow {
                        cycle: r.cycle,
                        q: r.q,
                        nontrivial: r.nontrivial,
                        squares_to_zero: r.squares_to_zero,
                    })
                }
            }
        }
    };
    let verdict = if nonzero_q.is_empty() {
        format!("no nonzero HH^{{2,q}} for 0 < q ≤ {bound} (consistent with intrinsic formality)")
    } else {
        let qs: Vec<String> = nonzero_q.iter().map(i64::to_string).collect();
        let witnessed = deformation
            .as_ref()
            .is_some_and(|d| d.nontrivial && d.squares_to_zero);
        format!(
            "nonzero HH^{{2,q}} at q ∈ {{{}}} (q ≤ {bound}) ⟹ NOT intrinsically formal ({})",
            qs.join(", "),
            if witnessed {
                "nontrivial first-order deformation witnessed"
            } else {
                "no deformation witness found"
            }
        )
    };
    Ok(ClassifyOutput {
        job: job.clone(),
        results,
        agreement,
        bound,
        nonzero_q,
        deformation,
        verdict,
    })
}

pub fn ainfty_check(
    characteristic: u64,
    coefficients: [i64; 4],
    max_arity: usize,
) -> Result<AInftyOutput, CliError> {
    let field = FieldSpec::new(characteristic)?;
    let c = rotation_m4(field, coefficients)?;
    let alg = c.algebra();
    let class = class_of(&c, 4)?;
    let cocycle = is_cocycle(alg, &class);
    let coboundary = is_coboundary(alg, &class)?;
    let report = check_stasheff(&c, max_arity)?;
    let m4 = class
        .entries()
        .map(|(t, z, v)| format!("{} ↦ {}·{}", t.display(alg), v, alg.label(z)))
        .collect();
    let verdict = match (cocycle, coboundary) {
        (true, false) => "nontrivial class in HH^{2,2}: m4 defines a genuine A∞-deformation",
        (true, true) => "m4 is a coboundary: the deformation is gauge-trivial",
        (false, _) => "m4 is not a Hochschild cocycle",
    };
    Ok(AInftyOutput {
        job: AInftyJob {
            command: "ainfty-check".into(),
            characteristic,
            coefficients,
            max_arity,
        },
        m4,
        p: class.p,
        q: class.q,
        cocycle,
        coboundary,
        stasheff: report
            .arities
            .iter()
            .map(|a| ArityRow {
                arity: a.arity,
                tensors_checked: a.tensors_checked,
                violations: a.violations,
                conditional: a.conditional,
            })
            .collect(),
        stasheff_verdict: serde_json::to_value(report.verdict)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default(),
        verdict: verdict.into(),
    })
}
