//! One function per subcommand.

use std::fmt::Write as _;
use std::time::Instant;

use dlbisim_core::bisim::{is_bisimulation, largest_bisimulation, BisimRelation};
use dlbisim_core::graph::LabeledGraph;
use dlbisim_core::quotient::{
    qs_quotient, quotient_interpretation, separating_concept, QuotientError,
};
use dlbisim_core::random;
use dlbisim_core::refine::{compute_partition, compute_partition_untraced};
use dlbisim_core::semantics::{
    check_assertion, check_expression, check_gci, check_kb, check_role_axiom, least_r_extension,
    EvalError, Evaluator,
};
use dlbisim_core::syntax::{check_names, parse_concept, to_unicode};
use dlbisim_core::{FeatureSet, Interpretation};

use crate::document::{Document, Model};
use crate::{CliError, EXIT_NEGATIVE, EXIT_OK};

/// What a command prints on standard output, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

fn eval_error(e: EvalError) -> CliError {
    CliError::Validation(e.to_string())
}

fn element(interp: &Interpretation, name: &str) -> Result<usize, CliError> {
    interp
        .element_index(name)
        .ok_or_else(|| CliError::Validation(format!("no element named {name:?}")))
}

/// `block <id>: <names>` per block of the largest auto-bisimulation, and
/// the refinement trace when requested.
pub fn partition(
    doc: &Document,
    phi: Option<&str>,
    interp: Option<&str>,
    trace: bool,
) -> Result<(Output, Option<String>), CliError> {
    let phi = doc.phi(phi)?;
    let (_, i) = doc.interpretation(interp)?;
    let g = LabeledGraph::from_interpretation(&i);
    let (p, t) = if trace {
        let (p, t) = compute_partition(phi, &g);
        (p, Some(t.to_string()))
    } else {
        (compute_partition_untraced(phi, &g), None)
    };
    let blocks = p.display_with(&i).to_string();
    Ok((Output::ok(blocks), t))
}

/// The quotient by the largest auto-bisimulation as a document, or the
/// QS-quotient with `qs`.
pub fn minimize(
    doc: &Document,
    phi_flag: Option<&str>,
    interp: Option<&str>,
    qs: bool,
) -> Result<Output, CliError> {
    let phi = doc.phi(phi_flag)?;
    let (name, i) = doc.interpretation(interp)?;
    let p = compute_partition_untraced(phi, &LabeledGraph::from_interpretation(&i));
    let internal = |e: QuotientError| CliError::Internal(e.to_string());
    let model = if qs {
        Model::Counted(qs_quotient(&i, &p).map_err(internal)?)
    } else {
        Model::Plain(quotient_interpretation(&i, &p).map_err(internal)?)
    };
    let out = Document::from_models([(name, &model)], doc.kb.clone(), Some(phi.to_string()));
    Ok(Output::ok(out.to_json()))
}

/// The largest bisimulation between two interpretations, or a report of
/// why there is none: the conditions that the largest bisimulation for the
/// largest workable subset of the features violates.
pub fn bisim(
    doc: &Document,
    phi_flag: Option<&str>,
    a: &str,
    b: &str,
    relation: bool,
) -> Result<Output, CliError> {
    let phi = doc.phi(phi_flag)?;
    let (_, left) = doc.interpretation(Some(a))?;
    let (_, right) = doc.interpretation(Some(b))?;
    let largest = |phi| {
        largest_bisimulation(phi, &left, &right).map_err(|e| CliError::Internal(e.to_string()))
    };
    let mut text = String::new();
    if let Some(z) = largest(phi)? {
        text.push_str("BISIMILAR\n");
        if relation {
            write_pairs(&mut text, &left, &right, &z);
        }
        return Ok(Output::ok(text));
    }
    text.push_str("NOT BISIMILAR\n");
    // Drop features, largest subsets first, until some bisimulation exists;
    // its failures under the full set explain the verdict.
    let mut weaker: Vec<FeatureSet> = phi.subsets().filter(|s| *s != phi).collect();
    weaker.sort_by_key(|s| (std::cmp::Reverse(s.iter().count()), s.bits()));
    let mut explained = false;
    for psi in weaker {
        if let Some(z) = largest(psi)? {
            let report = is_bisimulation(phi, &left, &right, &z);
            let _ = writeln!(
                text,
                "the largest {{{psi}}}-bisimulation violates under {{{phi}}}:"
            );
            text.push_str(&report.to_string());
            explained = true;
            break;
        }
    }
    if !explained {
        let z = BisimRelation::empty(left.size(), right.size());
        text.push_str(&is_bisimulation(phi, &left, &right, &z).to_string());
    }
    Ok(Output {
        text,
        code: EXIT_NEGATIVE,
    })
}

fn write_pairs(
    text: &mut String,
    left: &Interpretation,
    right: &Interpretation,
    z: &BisimRelation,
) {
    for (x, y) in z.pairs() {
        let _ = writeln!(
            text,
            "({}, {})",
            left.element_name(x),
            right.element_name(y)
        );
    }
}

/// The extension of a concept, as element names on one line.
pub fn eval(
    doc: &Document,
    phi_flag: Option<&str>,
    interp: Option<&str>,
    concept: &str,
) -> Result<Output, CliError> {
    let phi = doc.phi(phi_flag)?;
    let (_, model) = doc.model(interp)?;
    let c = parse_concept(concept).map_err(|e| CliError::Parse(format!("concept: {e}")))?;
    check_expression(model.base(), phi, &c).map_err(eval_error)?;
    let ext = match &model {
        Model::Plain(i) => Evaluator::new(i).concept(&c),
        Model::Counted(qs) => Evaluator::with_counts(qs).concept(&c),
    };
    let names: Vec<&str> = ext.iter().map(|x| model.base().element_name(x)).collect();
    Ok(Output::ok(format!("{}\n", names.join(" "))))
}

/// `SAT <axiom>` or `UNSAT <axiom>` for every axiom of the document's
/// knowledge base.
pub fn check_kb_cmd(
    doc: &Document,
    phi_flag: Option<&str>,
    interp: Option<&str>,
) -> Result<Output, CliError> {
    let phi = doc.phi(phi_flag)?;
    let (_, i) = doc.interpretation(interp)?;
    let kb = doc.knowledge_base()?;
    let report = check_kb(&i, phi, &kb).map_err(eval_error)?;
    let mut text = String::new();
    let mut line = |ok: bool, what: String| {
        let _ = writeln!(text, "{} {what}", if ok { "SAT" } else { "UNSAT" });
    };
    for ax in &kb.rbox {
        line(check_role_axiom(&i, ax), format!("rbox: {ax}"));
    }
    for g in &kb.tbox {
        line(check_gci(&i, g), format!("tbox: {g}"));
    }
    for a in &kb.abox {
        line(check_assertion(&i, a), format!("abox: {a}"));
    }
    let code = if report.is_model() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Output { text, code })
}

/// A concept holding at `x` and not at `y`.
pub fn witness(
    doc: &Document,
    phi_flag: Option<&str>,
    interp: Option<&str>,
    x: &str,
    y: &str,
    unicode: bool,
) -> Result<Output, CliError> {
    let phi = doc.phi(phi_flag)?;
    let (_, i) = doc.interpretation(interp)?;
    let (xi, yi) = (element(&i, x)?, element(&i, y)?);
    let (_, trace) = compute_partition(phi, &LabeledGraph::from_interpretation(&i));
    match separating_concept(phi, &i, &trace, xi, yi) {
        Ok(w) => {
            let text = if unicode {
                to_unicode(&*w.concept)
            } else {
                w.concept.to_string()
            };
            Ok(Output::ok(format!("{text}\n")))
        }
        Err(QuotientError::NotSeparated { .. }) => Ok(Output {
            text: format!("{x} and {y} are {{{phi}}}-bisimilar; no concept separates them\n"),
            code: EXIT_NEGATIVE,
        }),
        Err(e) => Err(CliError::Internal(e.to_string())),
    }
}

/// The least extension of an interpretation's roles satisfying the
/// document's RBox, as a document.
pub fn extend_rbox(doc: &Document, interp: Option<&str>) -> Result<Output, CliError> {
    let (name, i) = doc.interpretation(interp)?;
    let kb = doc.knowledge_base()?;
    for ax in &kb.rbox {
        let unknown = check_names(i.signature(), ax);
        if !unknown.is_empty() {
            return Err(eval_error(EvalError::UnknownNames(unknown)));
        }
    }
    let model = Model::Plain(least_r_extension(&i, &kb.rbox));
    let out = Document::from_models([(name, &model)], doc.kb.clone(), doc.phi.clone());
    Ok(Output::ok(out.to_json()))
}

/// Parameters of a generated document.
#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub seed: u64,
    pub n: usize,
    pub degree: usize,
    pub concepts: usize,
    pub roles: usize,
    pub individuals: usize,
}

/// A document with one random bounded-degree interpretation `I`.
pub fn gen(p: GenParams) -> Result<Output, CliError> {
    if p.n == 0 {
        return Err(CliError::Validation("--n must be positive".into()));
    }
    let sig = random::signature(p.concepts, p.roles, p.individuals);
    let i = random::bounded_degree(&mut random::rng(p.seed), &sig, p.n, p.degree);
    let model = Model::Plain(i);
    Ok(Output::ok(
        Document::from_models([("I".to_string(), &model)], None, None).to_json(),
    ))
}

/// Parameters of a timing run.
#[derive(Debug, Clone)]
pub struct BenchParams {
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub degree: usize,
    pub roles: usize,
    pub concepts: usize,
    pub phi: FeatureSet,
    pub reps: usize,
}

/// Median wall time in milliseconds of refining a random bounded-degree
/// interpretation of each size, as CSV `n,sigma,millis` where `sigma` is
/// the number of names in the signature.
pub fn bench(p: &BenchParams) -> Result<Output, CliError> {
    let mut text = String::from("n,sigma,millis\n");
    for &n in &p.sizes {
        let (sigma, ms) = time_refinement(p, n)?;
        let _ = writeln!(text, "{n},{sigma},{ms:.3}");
    }
    Ok(Output::ok(text))
}

/// `(|Σ|, median milliseconds)` for one size.
pub fn time_refinement(p: &BenchParams, n: usize) -> Result<(usize, f64), CliError> {
    if n == 0 || p.reps == 0 {
        return Err(CliError::Validation(
            "sizes and --reps must be positive".into(),
        ));
    }
    let sig = random::signature(p.concepts, p.roles, 0);
    let i = random::bounded_degree(&mut random::rng(p.seed ^ n as u64), &sig, n, p.degree);
    let mut times = Vec::with_capacity(p.reps);
    for _ in 0..p.reps {
        let start = Instant::now();
        let g = LabeledGraph::from_interpretation(&i);
        let part = compute_partition_untraced(p.phi, &g);
        std::hint::black_box(part.num_blocks());
        times.push(start.elapsed().as_secs_f64() * 1e3);
    }
    times.sort_by(f64::total_cmp);
    Ok((sig.size(), times[times.len() / 2]))
}
