//! One function per subcommand, each mapping parsed inputs to a JSON payload
//! and a short human summary. Nothing here touches the filesystem.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{json, Value};
use transdom_core::colorsearch::{
    find_transitive_coloring, majority_tournament, permutation_tournament, recover_permutation,
    Permutation,
};
use transdom_core::geometry::{
    all_scramblings, box_cover, classify_scrambling_3d, exists_point_in_box, extremal_pointset,
    search_box_free, BoxCoverOptions, ClassKind, PointSet, ScramblingClass,
};
use transdom_core::paley::{
    is_k_paradoxical, paley_tournament, refute_transitive_coloring, PaleyParams, RefutationStep,
};
use transdom_core::solvers::{
    enclosure_via_scramblings, fractional_transversal_approx, fractional_transversal_exact,
    greedy_dominating_set, min_enclosure_set, DominationMethod, DominationOutcome,
    DominationSolver, LowerBound,
};
use transdom_core::vcnets::{
    appendix_feasibility, appendix_scan, best_implied_bound, epsnet_sample, shatter_function,
    shatter_function_k, vc_dimension, FeasibilityReport, ShatterMode, Variant,
};
use transdom_core::{ColoredTournament, Hypergraph, ScramblingMask, Tournament, VertexSet};

use crate::format::{
    rational_decimal, rational_string, write_colored, write_permutation, write_points,
    write_tournament,
};
use crate::CliError;

/// What a command hands back to the front end.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub payload: Value,
    pub summary: String,
    /// Serialized instance for generator commands, in the matching text
    /// format.
    pub artifact: Option<String>,
}

impl Outcome {
    fn new(payload: Value, summary: String) -> Self {
        Self {
            payload,
            summary,
            artifact: None,
        }
    }

    fn with_artifact(mut self, text: String) -> Self {
        self.artifact = Some(text);
        self
    }
}

type Run = Result<Outcome, CliError>;

fn set_json(s: &VertexSet) -> Value {
    json!(s.as_slice())
}

fn set_text(s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomMethod {
    Exact,
    Greedy,
}

pub fn dom(t: &Tournament, method: DomMethod, limit: Option<usize>, ceiling: usize) -> Run {
    if method == DomMethod::Greedy {
        let set = greedy_dominating_set(t);
        return Ok(Outcome::new(
            json!({"size": set.len(), "set": set_json(&set), "optimal": false}),
            format!(
                "greedy dominating set of size {}: {}",
                set.len(),
                set_text(&set)
            ),
        ));
    }
    let mut solver = DominationSolver::default().with_ceiling(ceiling);
    if let Some(l) = limit {
        solver = solver.with_limit(l);
    }
    match solver.solve(t)? {
        DominationOutcome::Found(cert) => {
            let lower = match &cert.lower_bound_used {
                LowerBound::Trivial => json!({"kind": "trivial"}),
                LowerBound::Exhaustive => json!({"kind": "exhaustive"}),
                LowerBound::FractionalTransversal { tau_star } => {
                    json!({"kind": "fractional", "tau_star": rational_string(tau_star)})
                }
            };
            Ok(Outcome::new(
                json!({
                    "size": cert.size,
                    "set": set_json(&cert.set),
                    "optimal": cert.optimal,
                    "lower_bound": lower,
                }),
                format!("dom = {} witnessed by {}", cert.size, set_text(&cert.set)),
            ))
        }
        DominationOutcome::NoSetWithinLimit { lower_bound } => Ok(Outcome::new(
            json!({"size": null, "set": null, "optimal": false, "lower_bound": lower_bound}),
            format!("no dominating set within the limit; dom >= {lower_bound}"),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnclMethod {
    Exact,
    Scramblings,
    GreedyScramblings,
}

pub fn encl(ct: &ColoredTournament, method: EnclMethod) -> Run {
    let method_dom = match method {
        EnclMethod::Exact => {
            let set = min_enclosure_set(ct)?;
            return Ok(Outcome::new(
                json!({"size": set.len(), "set": set_json(&set), "optimal": true, "method": "exact"}),
                format!("encl = {} witnessed by {}", set.len(), set_text(&set)),
            ));
        }
        EnclMethod::Scramblings => DominationMethod::Exact,
        EnclMethod::GreedyScramblings => DominationMethod::Greedy,
    };
    let union = enclosure_via_scramblings(ct, method_dom)?;
    let parts: Vec<Value> = union
        .parts
        .iter()
        .map(|(mask, s)| json!({"mask": mask.bits(), "size": s.len(), "set": set_json(s)}))
        .collect();
    Ok(Outcome::new(
        json!({
            "size": union.set.len(),
            "set": set_json(&union.set),
            "optimal": false,
            "method": if method_dom == DominationMethod::Exact { "scramblings" } else { "greedy-scramblings" },
            "parts": parts,
            "part_sum": union.part_sum(),
            "max_part": union.max_part(),
        }),
        format!(
            "enclosure set of size {} from {} scramblings (sum of parts {}, largest {})",
            union.set.len(),
            union.parts.len(),
            union.part_sum(),
            union.max_part()
        ),
    ))
}

pub fn scramble(ct: &ColoredTournament, colors: &[usize]) -> Run {
    let mask = ScramblingMask::from_colors(ct.k(), colors)?;
    let out = ct.scramble(&mask);
    let text = write_colored(&out);
    Ok(Outcome::new(
        json!({
            "mask": mask.bits(),
            "colors": mask.colors().collect::<Vec<_>>(),
            "n": out.n(),
            "k": out.k(),
            "transitive": out.is_transitively_colored(),
            "tournament": text,
        }),
        format!("reversed colors {:?}", mask.colors().collect::<Vec<_>>()),
    )
    .with_artifact(text))
}

fn class_json(class: &ScramblingClass) -> Value {
    match *class {
        ScramblingClass::Dictatorship { axis, ascending } => {
            json!({"kind": "dictatorship", "axis": axis, "ascending": ascending})
        }
        ScramblingClass::TwoMajority { flips } => json!({"kind": "two-majority", "flips": flips}),
        ScramblingClass::Parity { even } => json!({"kind": "parity", "even": even}),
    }
}

fn kind_name(kind: ClassKind) -> &'static str {
    match kind {
        ClassKind::Dictatorship => "dictatorship",
        ClassKind::TwoMajority => "two-majority",
        ClassKind::Parity => "parity",
    }
}

pub fn classify(s: &PointSet) -> Run {
    let mut rows = Vec::new();
    let mut counts = [0usize; 3];
    for (mask, ct) in all_scramblings(s)? {
        let class = if s.d() == 3 {
            let c = classify_scrambling_3d(mask)?;
            counts[c.kind() as usize] += 1;
            class_json(&c)
        } else {
            Value::Null
        };
        rows.push(json!({
            "mask": mask.bits(),
            "colors": mask.colors().collect::<Vec<_>>(),
            "class": class,
            "transitive": ct.is_transitively_colored(),
        }));
    }
    let mut summary = format!(
        "{} scramblings of a {}-coordinate tournament",
        rows.len(),
        s.d()
    );
    let counts_json = if s.d() == 3 {
        let _ = write!(
            summary,
            ": {} dictatorship, {} two-majority, {} parity",
            counts[0], counts[1], counts[2]
        );
        json!({"dictatorship": counts[0], "two-majority": counts[1], "parity": counts[2]})
    } else {
        Value::Null
    };
    Ok(Outcome::new(
        json!({"d": s.d(), "n": s.len(), "scramblings": rows, "counts": counts_json}),
        summary,
    ))
}

pub fn boxcover(s: &PointSet, method: DominationMethod, exact_ceiling: usize) -> Run {
    let cert = box_cover(
        s,
        &BoxCoverOptions {
            method,
            exact_ceiling,
        },
    )?;
    let verified = cert.verify(s);
    if !verified {
        return Err(CliError::Invariant(
            "box-cover certificate failed verification".into(),
        ));
    }
    let per_class = if s.d() == 3 {
        let mut m = serde_json::Map::new();
        for kind in [
            ClassKind::Dictatorship,
            ClassKind::TwoMajority,
            ClassKind::Parity,
        ] {
            let (sum, max) = cert.class_sizes(kind);
            m.insert(kind_name(kind).into(), json!({"sum": sum, "max": max}));
        }
        Value::Object(m)
    } else {
        Value::Null
    };
    let parts: Vec<Value> = cert
        .parts
        .iter()
        .map(|p| {
            json!({
                "mask": p.mask.bits(),
                "class": p.class.as_ref().map_or(Value::Null, class_json),
                "size": p.set.len(),
                "set": set_json(&p.set),
                "exact": p.exact,
            })
        })
        .collect();
    let witnesses: Vec<Value> = cert
        .witnesses
        .iter()
        .map(|&(x, p, q)| json!([x, p, q]))
        .collect();
    Ok(Outcome::new(
        json!({
            "n": s.len(),
            "d": s.d(),
            "cover": set_json(&cert.cover),
            "size": cert.cover.len(),
            "witnesses": witnesses,
            "per_class_sizes": per_class,
            "parts": parts,
            "verified": verified,
        }),
        format!(
            "box cover of {} out of {} points, {} witnesses verified",
            cert.cover.len(),
            s.len(),
            cert.witnesses.len()
        ),
    ))
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Cube => "cube",
        Variant::Halved => "halved",
        Variant::Refined => "refined",
    }
}

fn feasibility_json(r: &FeasibilityReport) -> Value {
    let ratio = r.ratio();
    json!({
        "a": r.a,
        "b": r.b,
        "variant": variant_name(r.variant),
        "lhs": rational_string(&r.lhs),
        "rhs": rational_string(&r.rhs),
        "feasible": r.feasible,
        "implied_bound": r.implied_bound,
        "ratio": rational_string(&ratio),
        "ratio_decimal": rational_decimal(&ratio, 6),
        "paths_agree": r.paths_agree,
    })
}

pub fn appendix(a: u64, b: u64, variant: Variant) -> Run {
    let r = appendix_feasibility(a, b, variant);
    if !r.paths_agree {
        return Err(CliError::Invariant("binomial paths disagree".into()));
    }
    Ok(Outcome::new(
        feasibility_json(&r),
        format!(
            "a={a} b={b} {}: lhs/rhs = {} -> {}",
            variant_name(variant),
            rational_decimal(&r.ratio(), 6),
            if r.feasible { "feasible" } else { "infeasible" }
        ),
    ))
}

pub fn appendix_table(max_a: u64, max_b: u64, variant: Variant) -> Run {
    let rows = appendix_scan(max_a, max_b, variant);
    if rows.iter().any(|r| !r.paths_agree) {
        return Err(CliError::Invariant("binomial paths disagree".into()));
    }
    let best = best_implied_bound(max_a, max_b, variant);
    let mut summary = format!(
        "{:>4} {:>4} {:>9} {:>14}\n",
        "a", "b", "feasible", "lhs/rhs"
    );
    for r in rows.iter().filter(|r| r.feasible) {
        let _ = writeln!(
            summary,
            "{:>4} {:>4} {:>9} {:>14}",
            r.a,
            r.b,
            r.feasible,
            rational_decimal(&r.ratio(), 6)
        );
    }
    let _ = write!(
        summary,
        "{} variant, a <= {max_a}, b <= {max_b}: {}",
        variant_name(variant),
        match best {
            Some((a, b)) => format!("smallest feasible a = {a} (b = {b})"),
            None => "no feasible pair".into(),
        }
    );
    Ok(Outcome::new(
        json!({
            "variant": variant_name(variant),
            "max_a": max_a,
            "max_b": max_b,
            "best": best.map(|(a, b)| json!({"a": a, "b": b})),
            "rows": rows.iter().map(feasibility_json).collect::<Vec<_>>(),
        }),
        summary,
    ))
}

pub fn paley(q: u64) -> Run {
    let params = PaleyParams::new(q)?;
    let t = params.tournament();
    let text = write_tournament(&t);
    Ok(Outcome::new(
        json!({"q": q, "residues": params.residues(), "out_degree": t.out_degree(0), "tournament": text}),
        format!("Paley tournament on {q} vertices"),
    )
    .with_artifact(text))
}

pub fn refute(ct: &ColoredTournament) -> Run {
    let r = refute_transitive_coloring(ct)?;
    let step = match &r.step {
        RefutationStep::NotTransitive { color, a, b, c } => {
            json!({"kind": "not-transitive", "color": color, "path": [a, b, c]})
        }
        RefutationStep::NoSharedType => json!({"kind": "no-shared-type"}),
        RefutationStep::TransitivityForcing { a, b } => {
            json!({"kind": "transitivity-forcing", "edge": [a, b]})
        }
        RefutationStep::DiscrepancyContradiction => json!({"kind": "discrepancy"}),
        RefutationStep::NoContradiction => json!({"kind": "none"}),
    };
    Ok(Outcome::new(
        json!({
            "q": r.q,
            "k": r.k,
            "threshold": rational_string(&r.threshold),
            "above_theorem_threshold": r.above_theorem_threshold,
            "step": step,
            "witness": r.witness.map(|(w, c)| json!({"vertex": w, "color": c})),
            "in_set": set_json(&r.in_set),
            "out_set": set_json(&r.out_set),
            "discrepancy": r.discrepancy,
            "contradiction": r.contradiction(),
        }),
        format!(
            "q={} k={}: {}",
            r.q,
            r.k,
            if r.contradiction() {
                "coloring refuted"
            } else {
                "no contradiction reached"
            }
        ),
    ))
}

pub fn paradoxical(t: &Tournament, k: usize, budget: u64) -> Run {
    let p = is_k_paradoxical(t, k, budget)?;
    Ok(Outcome::new(
        json!({"n": t.n(), "k": k, "paradoxical": p}),
        format!("{}{k}-paradoxical", if p { "" } else { "not " }),
    ))
}

pub fn colorsearch(t: &Tournament, k: usize, budget: u64) -> Run {
    let found = find_transitive_coloring(t, k, budget)?;
    let text = found.as_ref().map(write_colored);
    let summary = match &found {
        Some(_) => format!("transitive {k}-coloring found"),
        None => format!("no transitive {k}-coloring exists"),
    };
    let out = Outcome::new(
        json!({"k": k, "found": found.is_some(), "coloring": text}),
        summary,
    );
    Ok(match text {
        Some(text) => out.with_artifact(text),
        None => out,
    })
}

pub fn permutation(pi: &Permutation) -> Run {
    let ct = permutation_tournament(pi);
    let text = write_colored(&ct);
    Ok(Outcome::new(
        json!({"n": pi.len(), "permutation": pi.values(), "tournament": text}),
        format!("permutation tournament on {} vertices", pi.len()),
    )
    .with_artifact(text))
}

pub fn recover(ct: &ColoredTournament) -> Run {
    match recover_permutation(ct)? {
        Some(r) => {
            let text = write_permutation(&r.permutation);
            Ok(Outcome::new(
                json!({"order": r.order, "permutation": r.permutation.values()}),
                format!("recovered permutation {}", text.trim_end()),
            )
            .with_artifact(text))
        }
        None => Err(CliError::Invariant(format!(
            "transitive 2-coloring with a cyclic value relation (would-be counterexample):\n{}",
            write_colored(ct)
        ))),
    }
}

pub fn majority(orders: &[Vec<usize>]) -> Run {
    let m = majority_tournament(orders)?;
    let text = write_colored(&m.colored);
    let color_sets: Vec<Vec<usize>> = m
        .color_sets
        .iter()
        .map(|&bits| (0..orders.len()).filter(|i| bits >> i & 1 == 1).collect())
        .collect();
    Ok(Outcome::new(
        json!({
            "n": m.tournament.n(),
            "k": m.colored.k(),
            "color_sets": color_sets,
            "transitive": m.colored.is_transitively_colored(),
            "acyclic": m.tournament.is_acyclic(),
            "tournament": text,
        }),
        format!(
            "majority of {} orders on {} vertices, {} colors",
            orders.len(),
            m.tournament.n(),
            m.colored.k()
        ),
    )
    .with_artifact(text))
}

/// Optional shatter-function query attached to `vc`.
#[derive(Debug, Clone, Copy)]
pub struct ShatterQuery {
    pub size: usize,
    pub trace: Option<usize>,
    pub mode: ShatterMode,
}

pub fn vc(h: &Hypergraph, shatter: Option<ShatterQuery>) -> Run {
    let r = vc_dimension(h)?;
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|&(n, c)| json!({"n": n, "pi": c}))
        .collect();
    let mut payload = json!({
        "n": h.n(),
        "vc": r.vc,
        "witness": set_json(&r.witness),
        "samples": samples,
        "exact": r.exact,
    });
    let mut summary = format!(
        "VC dimension {} witnessed by {}",
        r.vc,
        set_text(&r.witness)
    );
    if let Some(q) = shatter {
        let count = match q.trace {
            Some(k) => shatter_function_k(h, q.size, k, q.mode)?,
            None => shatter_function(h, q.size, q.mode)?,
        };
        payload["shatter"] = json!({
            "size": q.size,
            "trace_size": q.trace,
            "value": count.value,
            "exact": count.exact,
        });
        let _ = write!(
            summary,
            "; pi({}) {} {}",
            q.size,
            if count.exact { "=" } else { ">=" },
            count.value
        );
    }
    Ok(Outcome::new(payload, summary))
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

pub fn lp(h: &Hypergraph, exact: bool) -> Run {
    if exact {
        let s = fractional_transversal_exact(h)?;
        Ok(Outcome::new(
            json!({
                "exact": true,
                "tau_star": rational_string(&s.value),
                "nu_star": rational_string(&s.matching_value),
                "weights": rationals(&s.weights),
                "matching": rationals(&s.matching),
            }),
            format!(
                "tau* = {} = {}",
                rational_string(&s.value),
                rational_decimal(&s.value, 6)
            ),
        ))
    } else {
        let s = fractional_transversal_approx(h)?;
        Ok(Outcome::new(
            json!({
                "exact": false,
                "tau_star": s.value,
                "nu_star": s.matching_value,
                "weights": s.weights,
                "matching": s.matching,
            }),
            format!("tau* ~ {:.9}", s.value),
        ))
    }
}

pub fn epsnet(h: &Hypergraph, a: usize, b: usize, trials: u64, seed: u64) -> Run {
    let s = fractional_transversal_exact(h)?;
    let r = epsnet_sample(h, &s.weights, a, b, trials, seed)?;
    Ok(Outcome::new(
        json!({
            "tau_star": rational_string(&s.value),
            "a": a,
            "b": b,
            "trials": r.trials,
            "successes": r.successes,
            "rate": r.rate,
            "heavy_edges": r.heavy_edges,
        }),
        format!(
            "{} of {} draws gave a 1/2-net of size {a} (rate {:.4})",
            r.successes, r.trials, r.rate
        ),
    ))
}

pub fn extremal(d: usize, search: Option<usize>, seed: u64, budget: u64) -> Run {
    let s = match search {
        Some(size) => search_box_free(d, size, seed, budget)?,
        None => extremal_pointset(d)?,
    };
    let inside = exists_point_in_box(&s);
    if inside.is_some() {
        return Err(CliError::Invariant(
            "generated point set has a point inside a box".into(),
        ));
    }
    let text = write_points(&s);
    Ok(Outcome::new(
        json!({"d": d, "size": s.len(), "box_free": true, "points": text}),
        format!(
            "{} points in R^{d}, none inside the box of two others",
            s.len()
        ),
    )
    .with_artifact(text))
}

/// Domination hypergraph of a coordinate-tournament scrambling.
pub fn scrambling_hypergraph(s: &PointSet, mask: u64) -> Result<Hypergraph, CliError> {
    let ct = transdom_core::geometry::coordinate_tournament(s);
    let m = ScramblingMask::from_bits(mask);
    if m.colors().any(|c| c > ct.k()) {
        return Err(CliError::Usage(format!(
            "mask {mask} names colors beyond the palette 1..={}",
            ct.k()
        )));
    }
    Ok(ct.scramble(&m).base().domination_hypergraph())
}

/// Paley tournament for `--q` inputs.
pub fn paley_input(q: u64) -> Result<Tournament, CliError> {
    Ok(paley_tournament(q)?)
}
