use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use gt_core::algebra::{fmt_rational, parse_rational, parse_rational_list, Rational};
use gt_core::chevalley::{build_lie_algebra, LieAlgebraData};
use gt_core::eigenspace::{check_phi, generalized_eigenspaces, FilteredOperator, GeneralizedEigenspace, PhiReport};
use gt_core::gt_module::{
    casimir_split, character_of, cyclicity_witness, extend_simple, gamma_multiplicity, module_weight, monomials_up_to, n_a,
    weight_of, weight_space_basis, weight_space_bruteforce, GammaCharacter,
};
use gt_core::realization::{variable_labels, RealizationContext, Realize};
use gt_core::roots::{build_root_system, parse_type, weyl_vector, WeightVec};
use gt_core::verify::{check_casimir_split, random_filtered_pair, rng, verification_families, CheckResult};
use gt_core::verma::{
    central_character_check, general_rule_pattern, ideal_catalogue, intertwiner_report, simplicity_check_sl3, sl3_table_check,
    twisted_module_check, IntertwinerCase,
};
use gt_core::weyl::{WeylOp, WeylTermJson};

use crate::output::{CliError, Output};
use crate::{Cli, Command, Common, EigenArgs, RealizeArgs, Shift, Sl3Cmd, VermaArgs, WmoduleCmd};

type Res = Result<Output, CliError>;

pub fn dispatch(cli: &Cli) -> Res {
    let c = &cli.common;
    match &cli.cmd {
        Command::Roots => roots(c),
        Command::Algebra => algebra(c),
        Command::Realize(a) => realize(c, a),
        Command::Wmodule { cmd } => wmodule(c, cmd),
        Command::Verma(a) => verma(c, a),
        Command::Sl3 { cmd } => sl3(c, cmd),
        Command::Eigen(a) => eigen(c, a),
        Command::VerifyAll => verify_all(c),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn lie_algebra(c: &Common, default: Option<&str>) -> Result<Arc<LieAlgebraData>, CliError> {
    let ty = c.ty.as_deref().or(default).ok_or_else(|| usage("--type is required"))?;
    let (kind, rank) = if ty.len() == 1 {
        let r = c.rank.ok_or_else(|| usage(format!("--type {ty} needs --rank")))?;
        (ty.chars().next().unwrap().to_ascii_uppercase(), r)
    } else {
        let (k, r) = parse_type(ty)?;
        if let Some(given) = c.rank {
            if given != r {
                return Err(usage(format!("--rank {given} contradicts --type {ty}")));
            }
        }
        (k, r)
    };
    Ok(Arc::new(build_lie_algebra(&build_root_system(kind, rank)?)))
}

/// λ from --lambda; zero when omitted.
fn lambda(c: &Common, rank: usize) -> Result<WeightVec, CliError> {
    let Some(s) = &c.lambda else {
        return Ok(WeightVec::zero(rank));
    };
    let v = parse_rational_list(s).map_err(|e| {
        usage(format!("{e} (λ is restricted to rational coordinates so that every check stays exact)"))
    })?;
    if v.len() != rank {
        return Err(usage(format!("--lambda has {} entries, rank is {rank}", v.len())));
    }
    Ok(WeightVec(v))
}

fn int_list(s: &str, len: usize, what: &str) -> Result<Vec<i64>, CliError> {
    let v: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| usage(format!("{what}: `{p}` is not an integer"))))
        .collect::<Result<_, _>>()?;
    if v.len() != len {
        return Err(usage(format!("{what} has {} entries, expected {len}", v.len())));
    }
    Ok(v)
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn fmt_weight(w: &WeightVec) -> String {
    format!("({})", rats(&w.0).join(", "))
}

// ---- roots / algebra ----

fn roots(c: &Common) -> Res {
    let l = lie_algebra(c, None)?;
    let rs = &l.rs;
    let rho = weyl_vector(rs);
    let labels: Vec<String> = (0..rs.num_positive()).map(|k| rs.root_label(k)).collect();
    let result = json!({
        "type": rs.name(),
        "rank": rs.rank,
        "cartan_matrix": rs.cartan_matrix,
        "positive_roots": rs.positive_roots,
        "heights": rs.heights,
        "num_positive": rs.num_positive(),
        "theta": rs.theta(),
        "theta_index": rs.theta_index,
        "simple_lengths": rats(&rs.simple_lengths),
        "weyl_vector": rats(&rho.0),
    });
    let mut t = String::new();
    writeln!(t, "type {}  rank {}  |Δ⁺| = {}", rs.name(), rs.rank, rs.num_positive()).unwrap();
    writeln!(t, "cartan {:?}", rs.cartan_matrix).unwrap();
    writeln!(t, "positive roots {}", labels.join(" ")).unwrap();
    writeln!(t, "theta {}  rho {}", rs.root_label(rs.theta_index), fmt_weight(&rho)).unwrap();
    Ok(Output::new("roots", true, result, t))
}

fn algebra(c: &Common) -> Res {
    let l = lie_algebra(c, None)?;
    let jacobi = l.check_jacobi();
    let table = l.bracket_table();
    let ok = jacobi.is_none();
    let result = json!({
        "table": table,
        "jacobi_violation": jacobi.map(|(a, b, c)| vec![l.label(a), l.label(b), l.label(c)]),
    });
    let mut t = String::new();
    writeln!(t, "{}: dimension {}", l.rs.name(), l.dim).unwrap();
    writeln!(t, "basis {}", (0..l.dim).map(|i| l.label(i)).collect::<Vec<_>>().join(" ")).unwrap();
    writeln!(t, "Jacobi identity: {}", if ok { "holds on all basis triples" } else { "VIOLATED" }).unwrap();
    Ok(Output::new("algebra", ok, result, t))
}

// ---- realize ----

#[derive(Serialize)]
struct OperatorOut {
    element: String,
    display: String,
    terms: Vec<WeylTermJson>,
}

fn realize(c: &Common, a: &RealizeArgs) -> Res {
    let l = lie_algebra(c, None)?;
    let lam = lambda(c, l.rank())?;
    let ctx = match a.shift {
        Shift::Rho => RealizationContext::for_module(l.clone(), &lam)?,
        Shift::None => RealizationContext::new(l.clone(), lam.clone())?,
    };
    let which = if a.sigma { Realize::Sigma } else { Realize::Pi };
    let labels = variable_labels(&l);
    let elements: Vec<(String, WeylOp)> = match a.element.as_deref() {
        Some("h_theta") => vec![("h_theta".into(), ctx.image_sparse(which, &l.h_theta()))],
        Some(s) => {
            let i = l.parse_label(s)?;
            vec![(l.label(i), ctx.image(which, i).clone())]
        }
        None => (0..l.dim).map(|i| (l.label(i), ctx.image(which, i).clone())).collect(),
    };
    let ops: Vec<OperatorOut> = elements
        .iter()
        .map(|(e, op)| OperatorOut { element: e.clone(), display: op.display_with(&labels), terms: op.to_json_terms(&labels) })
        .collect();
    let name = if a.sigma { "sigma" } else { "pi" };
    let mut t = String::new();
    for o in &ops {
        writeln!(t, "{name}({}) = {}", o.element, o.display).unwrap();
    }
    let result = json!({
        "lambda": rats(&lam.0),
        "shift": match a.shift { Shift::Rho => "rho", Shift::None => "none" },
        "subscript": rats(&ctx.lambda.0),
        "realization": name,
        "variables": labels,
        "operators": ops,
    });
    Ok(Output::new("realize", true, result, t))
}

// ---- wmodule ----

fn a_vec(a: &Option<String>, rank: usize) -> Result<Vec<i64>, CliError> {
    match a {
        Some(s) => int_list(s, rank, "--a"),
        None => Ok(vec![0; rank]),
    }
}

fn wmodule(c: &Common, cmd: &WmoduleCmd) -> Res {
    let l = lie_algebra(c, None)?;
    let rs = &l.rs;
    let lam = lambda(c, l.rank())?;
    let ctx = RealizationContext::for_module(l.clone(), &lam)?;
    match cmd {
        WmoduleCmd::Weights(args) => {
            if args.a.is_some() {
                let a = a_vec(&args.a, rs.rank)?;
                let mu = weight_of(rs, &lam, &extend_simple(rs, &a));
                let na = n_a(rs, &a)?;
                let t = format!("μ_(λ,a) = {}  n_a = {na}\n", fmt_weight(&mu));
                return Ok(Output::new("wmodule weights", true, json!({ "a": a, "weight": mu, "n_a": na }), t));
            }
            let mut rows = Vec::new();
            let mut t = String::new();
            for m in monomials_up_to(rs.num_positive(), c.bound) {
                let b: Vec<i64> = m.iter().map(|&v| v as i64).collect();
                let ch = character_of(rs, &lam, &b);
                writeln!(t, "{b:?}  weight {}  Cas_θ {}", fmt_weight(&ch.mu), fmt_rational(&ch.c)).unwrap();
                rows.push(json!({ "monomial": b, "weight": ch.mu, "casimir": fmt_rational(&ch.c) }));
            }
            Ok(Output::new("wmodule weights", true, json!({ "bound": c.bound, "monomials": rows }), t))
        }
        WmoduleCmd::Basis(args) => {
            let a = a_vec(&args.a, rs.rank)?;
            let basis = weight_space_basis(rs, &a, c.bound)?;
            let brute = weight_space_bruteforce(rs, &a, c.bound);
            let ok = basis == brute;
            let mut t = format!("weight space of a = {a:?}, degree ≤ {}: {} vectors\n", c.bound, basis.len());
            for b in &basis {
                writeln!(t, "  {b:?}").unwrap();
            }
            writeln!(t, "brute-force enumeration agrees: {ok}").unwrap();
            let result = json!({ "a": a, "bound": c.bound, "basis": basis, "matches_bruteforce": ok });
            Ok(Output::new("wmodule basis", ok, result, t))
        }
        WmoduleCmd::Casimir => {
            let labels = variable_labels(&l);
            let (s, nil) = casimir_split(&ctx);
            let rep = check_casimir_split(&ctx, c.bound);
            let ok = rep.result.ok();
            let mut t = String::new();
            writeln!(t, "s = {}", s.display_with(&labels)).unwrap();
            writeln!(t, "n = {}", nil.display_with(&labels)).unwrap();
            writeln!(t, "{} checks on {} monomials, {} violations", rep.result.checked, rep.monomials, rep.result.violations.len())
                .unwrap();
            writeln!(
                t,
                "n strictly lowers: x_θ-degree {}, ∂-degree {}, total degree {}",
                rep.n_lowers_theta_degree, rep.n_lowers_partial_degree, rep.n_lowers_total_degree
            )
            .unwrap();
            let result = json!({ "s": s.display_with(&labels), "n": nil.display_with(&labels), "report": rep });
            Ok(Output::new("wmodule casimir", ok, result, t))
        }
        WmoduleCmd::GammaMult { a, c: cval } => {
            let a = a_vec(&a.a, rs.rank)?;
            let mw = module_weight(&ctx);
            let mu = weight_of(rs, &mw, &extend_simple(rs, &a));
            let cv = match cval {
                Some(s) => parse_rational(s)?,
                None => {
                    let mut b = extend_simple(rs, &a);
                    let t = gt_core::gt_module::t_vector(rs, rs.theta_index)?;
                    let na = n_a(rs, &a)?;
                    for (x, y) in b.iter_mut().zip(&t) {
                        *x += na * y;
                    }
                    character_of(rs, &mw, &b).c
                }
            };
            let chi = GammaCharacter { mu, c: cv };
            let g = gamma_multiplicity(&ctx, &chi, c.bound)?;
            let ok = g.saturated && g.dimension == g.oracle;
            let mut t = String::new();
            writeln!(t, "χ = ({}, {})", fmt_weight(&chi.mu), fmt_rational(&chi.c)).unwrap();
            writeln!(t, "dimension {}  (oracle {} at degree ≤ {}, saturated {})", g.dimension, g.oracle, g.oracle_bound, g.saturated)
                .unwrap();
            writeln!(t, "x_θ-families N = {:?}, n_a = {}", g.families, g.n_a).unwrap();
            writeln!(
                t,
                "counting sets: first {}, second (literal shift) {}, second (shift without n_a) {}",
                g.first_set, g.second_set_literal, g.second_set_without_na
            )
            .unwrap();
            let result = json!({ "character": chi, "multiplicity": g });
            Ok(Output::new("wmodule gamma-mult", ok, result, t))
        }
        WmoduleCmd::Cyclic => {
            let rep = cyclicity_witness(&ctx, c.bound);
            let ok = rep.formula_failures.is_empty() && rep.all_reached();
            let t = format!(
                "{} formula checks, {} failures\ngenerator x_θ^{}: reached {}/{} monomials of degree ≤ {}\n",
                rep.formulas_checked,
                rep.formula_failures.len(),
                rep.generator_theta_power,
                rep.reached,
                rep.total,
                rep.bound
            );
            Ok(Output::new("wmodule cyclic", ok, rep, t))
        }
    }
}

// ---- verma ----

fn verma(c: &Common, a: &VermaArgs) -> Res {
    let l = lie_algebra(c, None)?;
    let lam = lambda(c, l.rank())?;
    let ctx = RealizationContext::for_module(l.clone(), &lam)?;
    let cc = central_character_check(&ctx, c.bound);
    let mut ok = cc.ok();
    let mut t = format!(
        "central character: Casimir acts by {} on {} + {} monomials; (λ+ρ,λ+ρ)-(ρ,ρ) = {}\n",
        cc.kappa.clone().unwrap_or_else(|| "-".into()),
        cc.checked_verma,
        cc.checked_gt,
        fmt_rational(&cc.expected)
    );
    if let Some(m) = &cc.mismatch {
        writeln!(t, "mismatch: {m}").unwrap();
    }
    let mut twisted = None;
    if let Some(w) = &a.word {
        let word: Vec<usize> = if w.trim().is_empty() {
            vec![]
        } else {
            w.split(',')
                .map(|p| match p.trim().parse::<usize>() {
                    Ok(i) if (1..=l.rank()).contains(&i) => Ok(i - 1),
                    _ => Err(usage(format!("--word: `{p}` is not a simple reflection index in 1..={}", l.rank()))),
                })
                .collect::<Result<_, _>>()?
        };
        let pat = general_rule_pattern(&l.rs, &word);
        let good = twisted_module_check(&ctx, &word, c.bound.min(2))?;
        ok &= good;
        writeln!(t, "twisted module for word {w}: ideal pattern {:?}, module axiom {}", pat.0, if good { "holds" } else { "FAILS" })
            .unwrap();
        twisted = Some(json!({ "word": word, "pattern": pat, "module_axiom": good }));
    }
    Ok(Output::new("verma", ok, json!({ "central_character": cc, "twisted": twisted }), t))
}

// ---- sl3 ----

fn sl3(c: &Common, cmd: &Sl3Cmd) -> Res {
    let l = lie_algebra(c, Some("A2"))?;
    if l.rs.kind != 'A' || l.rank() != 2 {
        return Err(usage("sl3 commands need --type A2"));
    }
    let lam = lambda(c, 2)?;
    match cmd {
        Sl3Cmd::TableCheck => {
            let ctx = RealizationContext::new(l.clone(), lam)?;
            let rep = sl3_table_check(&ctx)?;
            let mut t = format!("{}/{} operators match\n", rep.matched, rep.total);
            for m in &rep.mismatches {
                writeln!(t, "{}: computed {} expected {}", m.label, m.computed, m.expected).unwrap();
            }
            Ok(Output::new("sl3 table-check", rep.ok(), rep, t))
        }
        Sl3Cmd::Simplicity => {
            let rep = simplicity_check_sl3(&l, &lam, c.bound)?;
            let ok = rep.consistent();
            let mut t = format!(
                "ν = {} (W(λ), λ = {}): {}\n",
                fmt_weight(&rep.nu),
                fmt_weight(&rep.highest_weight),
                if rep.verdict { "simple" } else { "not simple" }
            );
            writeln!(
                t,
                "readings: proof {}, statement {}, statement without shift {}",
                rep.proof_reading, rep.statement_reading, rep.statement_unshifted
            )
            .unwrap();
            writeln!(t, "w1/w2 formulas: {} checks, {} failures", rep.w_checks, rep.w_failures.len()).unwrap();
            if let Some(cl) = &rep.closure {
                writeln!(
                    t,
                    "closure at degree ≤ {}: forward {}/{}, back to 1 {}/{}",
                    cl.bound, cl.forward_reached, cl.forward_total, cl.backward_reaching_one, cl.backward_total
                )
                .unwrap();
            }
            for w in &rep.witnesses {
                writeln!(t, "witness {w:?} valid {}", w.valid()).unwrap();
            }
            writeln!(t, "evidence consistent with verdict: {ok}").unwrap();
            Ok(Output::new("sl3 simplicity", ok, rep, t))
        }
        Sl3Cmd::Intertwiner { case } => {
            let case = IntertwinerCase::parse(case)?;
            let rep = intertwiner_report(&l, &lam, case)?;
            let ok = rep.failures.is_empty();
            let mut t = format!("φ = {}\n", rep.operator);
            writeln!(t, "intertwining identity on all 8 generators: {}", if ok { "exact" } else { "FAILS" }).unwrap();
            if !ok {
                writeln!(t, "failing generators: {}", rep.failures.join(" ")).unwrap();
            }
            if let Some(f) = &rep.opposite_sign_failures {
                writeln!(t, "with k = -(λ1+λ2): {} generators fail", f.len()).unwrap();
            }
            Ok(Output::new("sl3 intertwiner", ok, rep, t))
        }
        Sl3Cmd::Ideals => {
            let cat = ideal_catalogue(&l.rs)?;
            let mut ok = true;
            let mut t = String::new();
            let mut rows = Vec::new();
            for e in &cat {
                let rule = e.word.as_ref().map(|w| general_rule_pattern(&l.rs, w) == e.pattern);
                ok &= rule != Some(false);
                writeln!(
                    t,
                    "{:7} {}{}",
                    e.label,
                    e.generators,
                    match rule {
                        Some(true) => "  (general rule agrees)",
                        Some(false) => "  (general rule DISAGREES)",
                        None => "",
                    }
                )
                .unwrap();
                rows.push(json!({ "entry": e, "general_rule_agrees": rule }));
            }
            Ok(Output::new("sl3 ideals", ok, json!({ "ideals": rows }), t))
        }
    }
}

// ---- eigen ----

#[derive(serde::Deserialize)]
struct PairInput {
    ts: FilteredOperator,
    tn: FilteredOperator,
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn spaces_text(t: &mut String, name: &str, spaces: &[GeneralizedEigenspace]) {
    for s in spaces {
        writeln!(t, "{name}: eigenvalue {} multiplicity {}", fmt_rational(&s.eigenvalue), s.multiplicity).unwrap();
    }
}

fn eigen(c: &Common, a: &EigenArgs) -> Res {
    let (ts, tn) = match &a.input {
        Some(p) => {
            let raw = read_input(p)?;
            let v: serde_json::Value = serde_json::from_str(&raw).map_err(|e| usage(format!("input JSON: {e}")))?;
            if v.get("ts").is_some() {
                let pair: PairInput = serde_json::from_value(v).map_err(|e| usage(format!("input JSON: {e}")))?;
                (pair.ts, Some(pair.tn))
            } else {
                let op: FilteredOperator = serde_json::from_value(v).map_err(|e| usage(format!("input JSON: {e}")))?;
                (op, None)
            }
        }
        None => {
            let (s, n) = random_filtered_pair(&mut rng(c.seed), 12);
            (s, Some(n))
        }
    };
    if ts.grades.iter().sum::<usize>() != ts.dim() {
        return Err(usage("graded dimensions do not sum to the matrix size"));
    }
    let mut t = String::new();
    match tn {
        None => {
            if !ts.preserves_filtration() {
                return Err(usage("the operator does not preserve the filtration"));
            }
            let spaces = generalized_eigenspaces(&ts)?;
            spaces_text(&mut t, "T", &spaces);
            Ok(Output::new("eigen", true, json!({ "operator": ts, "eigenspaces": spaces }), t))
        }
        Some(tn) => {
            if tn.grades != ts.grades || tn.dim() != ts.dim() {
                return Err(usage("T_s and T_n must share the graded dimensions"));
            }
            let total = FilteredOperator::new(ts.grades.clone(), &ts.matrix + &tn.matrix)?;
            let s_spaces = generalized_eigenspaces(&ts)?;
            let t_spaces = generalized_eigenspaces(&total)?;
            let rep: PhiReport = check_phi(&ts, &tn)?;
            spaces_text(&mut t, "T_s", &s_spaces);
            spaces_text(&mut t, "T_s+T_n", &t_spaces);
            writeln!(
                t,
                "spectra equal {}, φ maps eigenspaces {}, gr φ = id {}, invertible {}, kernel oracle {}",
                rep.spectra_equal, rep.maps_eigenspaces, rep.graded_identity, rep.invertible, rep.matches_kernel_oracle
            )
            .unwrap();
            let result = json!({
                "ts": ts,
                "tn": tn,
                "eigenspaces_ts": s_spaces,
                "eigenspaces_total": t_spaces,
                "phi": rep,
            });
            Ok(Output::new("eigen", rep.ok(), result, t))
        }
    }
}

// ---- verify-all ----

fn threads() -> usize {
    std::env::var("GTR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn verify_all(c: &Common) -> Res {
    let l = lie_algebra(c, None)?;
    let families = verification_families(&l, c.seed);
    let n = families.len();
    let workers = threads().min(n).max(1);
    let mut results: Vec<Option<CheckResult>> = vec![None; n];
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots = std::sync::Mutex::new(&mut results);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let r = families[i].run();
                slots.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    let results: Vec<CheckResult> = results.into_iter().map(|r| r.expect("every family ran")).collect();
    let ok = results.iter().all(CheckResult::ok);
    let mut t = String::new();
    for r in &results {
        writeln!(t, "{} {:28} {:6} checks  {} violations", if r.ok() { "PASS" } else { "FAIL" }, r.name, r.checked, r.violations.len())
            .unwrap();
        for v in r.violations.iter().take(5) {
            writeln!(t, "    {v}").unwrap();
        }
    }
    let result = json!({ "type": l.rs.name(), "seed": c.seed, "families": results });
    Ok(Output::new("verify-all", ok, result, t))
}
