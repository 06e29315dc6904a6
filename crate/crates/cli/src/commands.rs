use crate::output::{document, render, Format};
use crate::{
    AnalyzeArgs, CliError, ColorArgs, ColorMode, ConstructArgs, Family, FeasibleArgs, KindArg,
    McArgs, ObjectiveArg, OracleArgs, Outcome,
};
use majority_illusion::coloring::{strict_illusion_from_proper, ColoringError};
use majority_illusion::construct::{construct_regular_illusion, fast_construct, ConstructError};
use majority_illusion::feasibility::{regular_necessary, regular_parity_obstruction, Strictness};
use majority_illusion::format::{parse_graph, write_colored, write_graph, FormatError, GraphFile};
use majority_illusion::gmjl::{
    formula_possible_capped, illusion_formula, parse_formula, IllusionKind, Model,
};
use majority_illusion::graph::{circulant_graph, complete_graph, cycle_graph};
use majority_illusion::oracle::{NetworkKind, Objective, Oracle, DEFAULT_CAP};
use majority_illusion::{
    classify_network, illusion_coloring, pq_report, weak_majority_2_coloring, ColoredGraph,
    Coloring, Threshold,
};
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::path::Path;

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_graph(path: Option<&Path>) -> Result<GraphFile, CliError> {
    let name = path.map_or("stdin".into(), |p| p.display().to_string());
    parse_graph(&read_input(path)?).map_err(|e| CliError::Usage(format!("{name}: {e}")))
}

fn read_colored(path: Option<&Path>) -> Result<ColoredGraph, CliError> {
    read_graph(path)?.into_colored().map_err(|e| match e {
        FormatError::Uncolored => CliError::Usage(
            "input graph has no coloring; pipe it through `majill color` first".into(),
        ),
        other => CliError::usage(other),
    })
}

fn print_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Usage(format!("stdout: {e}")))
}

/// Side reports of graph-producing commands go to a file or to stderr so that
/// stdout stays a graph file.
fn emit_side_report(doc: &Value, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let text = render(doc, format);
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn coloring_error(e: ColoringError) -> CliError {
    match e {
        ColoringError::InternalInvariant(m) => CliError::Internal(m),
        other => CliError::usage(other),
    }
}

pub fn gen(family: &Family, seed: Option<u64>) -> Result<Outcome, CliError> {
    let g = match family {
        Family::Cycle { n } => cycle_graph(*n),
        Family::Complete { n } => complete_graph(*n),
        Family::Circulant { n, offsets } => circulant_graph(*n, offsets),
    }
    .map_err(CliError::usage)?;
    let coloring = seed.map(|s| Coloring::random(g.node_count(), s));
    print_stdout(&write_graph(&g, coloring.as_ref()))?;
    Ok(Outcome::Positive)
}

pub fn color(a: &ColorArgs, format: Format) -> Result<Outcome, CliError> {
    let file = read_graph(a.input.as_deref())?;
    let n = file.graph.node_count();
    let (colored, summary, outcome) = match a.mode {
        ColorMode::WeakMajority => {
            let start = file.coloring.unwrap_or_else(|| Coloring::random(n, a.seed));
            let cg = ColoredGraph::new(file.graph, start).map_err(coloring_error)?;
            let run = weak_majority_2_coloring(cg);
            let summary = json!({
                "mode": "weak-majority",
                "swaps": run.swaps,
                "monochromatic_before": run.monochromatic_trace.first(),
                "monochromatic_after": run.monochromatic_trace.last(),
                "weak_majority": run.colored.is_weak_majority_coloring(),
            });
            (run.colored, summary, Outcome::Positive)
        }
        ColorMode::Illusion => {
            let run = illusion_coloring(&file.graph).map_err(coloring_error)?;
            let report = classify_network(&run.colored);
            let summary = json!({
                "mode": "illusion",
                "swaps": run.swaps,
                "tie_flips": run.tie_flips,
                "strict": report.strict,
                "weak": report.weak(),
                "majority_weak_majority": report.majority_weak_majority,
            });
            (run.colored, summary, Outcome::Positive)
        }
        ColorMode::Strict => match strict_illusion_from_proper(&file.graph) {
            Ok(s) => {
                let report = classify_network(&s.colored);
                let summary = json!({
                    "mode": "strict",
                    "flipped": s.flipped,
                    "strict": report.strict,
                    "majority_majority": report.majority_majority,
                    "weak_majority_majority": report.weak_majority_majority,
                });
                (s.colored, summary, Outcome::Positive)
            }
            Err(e) => {
                let doc = document(
                    "color",
                    json!({"mode": "strict", "available": false, "reason": e.to_string()}),
                );
                emit_side_report(&doc, format, a.report.as_deref())?;
                return Ok(Outcome::Negative);
            }
        },
    };
    print_stdout(&write_colored(&colored))?;
    emit_side_report(&document("color", summary), format, a.report.as_deref())?;
    Ok(outcome)
}

fn threshold(flag: &str, text: &str) -> Result<Threshold, CliError> {
    text.parse()
        .map_err(|e| CliError::Usage(format!("--{flag} {text:?}: {e}")))
}

pub fn analyze(a: &AnalyzeArgs, format: Format) -> Result<Outcome, CliError> {
    let cg = read_colored(a.input.as_deref())?;
    let mut body = to_value(&classify_network(&cg));
    body.as_object_mut()
        .expect("report is an object")
        .insert("coloring".into(), to_value(cg.coloring()));
    if let (Some(p), Some(q)) = (&a.p, &a.q) {
        let report = pq_report(&cg, threshold("p", p)?, threshold("q", q)?);
        body.as_object_mut()
            .expect("report is an object")
            .insert("pq".into(), to_value(&report));
    }
    print_stdout(&render(&document("analyze", body), format))?;
    Ok(Outcome::Positive)
}

pub fn feasible(a: &FeasibleArgs, format: Format) -> Result<Outcome, CliError> {
    let strictness = if a.weak {
        Strictness::Weak
    } else {
        Strictness::Strict
    };
    let verdict = regular_necessary(a.n, a.k, strictness).map_err(CliError::usage)?;
    let reasons: Vec<Value> = verdict
        .reasons
        .iter()
        .map(|r| json!({"code": r.code(), "description": r.description()}))
        .collect();
    let mut body = json!({
        "n": a.n,
        "k": a.k,
        "variant": if a.weak { "weak-majority-majority" } else { "majority-majority" },
        "conditions_hold": verdict.possible,
        "reasons": reasons,
    });
    let positive = if a.weak {
        verdict.possible
    } else {
        let obstruction = regular_parity_obstruction(a.n, a.k);
        let fields = body.as_object_mut().expect("object");
        fields.insert("parity_obstruction".into(), obstruction.into());
        fields.insert(
            "witness_exists".into(),
            (verdict.possible && !obstruction).into(),
        );
        verdict.possible && !obstruction
    };
    body.as_object_mut()
        .expect("object")
        .insert("possible".into(), positive.into());
    print_stdout(&render(&document("feasible", body), format))?;
    Ok(if positive {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

pub fn construct(a: &ConstructArgs, format: Format) -> Result<Outcome, CliError> {
    let result = if a.fast {
        fast_construct(a.n, a.k)
    } else {
        construct_regular_illusion(a.n, a.k)
    };
    let c = match result {
        Ok(c) => c,
        Err(e @ (ConstructError::Infeasible { .. } | ConstructError::ParityObstruction { .. })) => {
            eprintln!("majill: {e}");
            return Ok(Outcome::Negative);
        }
        Err(e @ ConstructError::SubgraphArguments { .. }) => {
            return Err(CliError::Internal(e.to_string()))
        }
        Err(e) if e.is_internal() => return Err(CliError::Internal(e.to_string())),
        Err(e) => return Err(CliError::usage(e)),
    };
    if !c.report.validation.passed() {
        return Err(CliError::Internal(format!(
            "constructed graph failed validation: {:?}",
            c.report.validation
        )));
    }
    print_stdout(&write_colored(&c.colored))?;
    emit_side_report(
        &document("construct", to_value(&c.report)),
        format,
        a.report.as_deref(),
    )?;
    Ok(Outcome::Positive)
}

pub fn oracle(a: &OracleArgs, format: Format) -> Result<Outcome, CliError> {
    let g = read_graph(a.input.as_deref())?.graph;
    let mut oracle = Oracle::new(a.cap.unwrap_or(DEFAULT_CAP));
    if a.sequential {
        oracle = oracle.sequential();
    }
    let (body, outcome) = if let Some(kind) = a.kind {
        let kind = match kind {
            KindArg::MajorityMajority => NetworkKind::MajorityMajority,
            KindArg::WeakMajorityMajority => NetworkKind::WeakMajorityMajority,
            KindArg::MajorityWeakMajority => NetworkKind::MajorityWeakMajority,
            KindArg::WeakMajorityWeakMajority => NetworkKind::WeakMajorityWeakMajority,
            KindArg::UnanimityMajority => NetworkKind::UnanimityMajority,
            KindArg::UnanimityWeakMajority => NetworkKind::UnanimityWeakMajority,
        };
        let witness = oracle.illusion_witness(&g, kind).map_err(CliError::usage)?;
        let outcome = if witness.is_some() {
            Outcome::Positive
        } else {
            Outcome::Negative
        };
        let body = json!({
            "n": g.node_count(),
            "cap": oracle.cap(),
            "kind": to_value(&kind),
            "possible": witness.is_some(),
            "coloring": witness.map(|c| c.to_string()),
        });
        (body, outcome)
    } else {
        let objective = match a.objective {
            ObjectiveArg::MaxStrictIllusion => Objective::MaxStrictIllusion,
            ObjectiveArg::MaxWeakIllusion => Objective::MaxWeakIllusion,
            ObjectiveArg::MinMonochromatic => Objective::MinMonochromatic,
        };
        let best = oracle
            .best_coloring(&g, objective)
            .map_err(CliError::usage)?;
        let body = json!({
            "n": g.node_count(),
            "cap": oracle.cap(),
            "objective": to_value(&objective),
            "coloring": best.coloring.to_string(),
            "score": best.score,
        });
        (body, Outcome::Positive)
    };
    print_stdout(&render(&document("oracle", body), format))?;
    Ok(outcome)
}

pub fn mc(a: &McArgs, format: Format) -> Result<Outcome, CliError> {
    let formula = match (&a.formula, &a.preset) {
        (Some(text), _) => {
            parse_formula(text).map_err(|e| CliError::Usage(format!("formula: {e}")))?
        }
        (None, Some(name)) => {
            let kind: IllusionKind = name.parse().map_err(CliError::usage)?;
            illusion_formula(kind, &a.atom)
        }
        (None, None) => return Err(CliError::Usage("need --formula or --preset".into())),
    };
    let file = read_graph(a.input.as_deref())?;

    let (mode, node, value) = if a.possible {
        let v = formula_possible_capped(&file.graph, &formula, &a.atom, DEFAULT_CAP)
            .map_err(CliError::usage)?;
        ("possible", None, v)
    } else {
        let model = match (&a.valuation, file.coloring) {
            (Some(path), _) => Model::parse_valuation(file.graph, &read_input(Some(path))?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
            (None, Some(c)) => {
                let cg = ColoredGraph::new(file.graph, c).map_err(coloring_error)?;
                Model::from_colored(&cg, &a.atom)
            }
            (None, None) => {
                return Err(CliError::Usage(
                    "graph has no coloring; give --valuation or a colored graph".into(),
                ))
            }
        };
        for atom in model.unknown_atoms(&formula) {
            eprintln!("majill: warning: atom {atom:?} holds nowhere in the model");
        }
        match a.node {
            Some(i) => (
                "node",
                Some(i),
                model.check(i, &formula).map_err(CliError::usage)?,
            ),
            None => ("global", None, model.holds_everywhere(&formula)),
        }
    };
    let body = json!({
        "formula": formula.to_string(),
        "mode": mode,
        "node": node,
        "value": value,
    });
    print_stdout(&render(&document("mc", body), format))?;
    Ok(if value {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}
