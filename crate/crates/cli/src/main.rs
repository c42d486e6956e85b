mod args;
mod render;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};
use turan_core::extremal::t_table;
use turan_core::facets::{check_lift_general_form, check_lift_rank_form, is_facet};
use turan_core::inequalities::{
    blowup_inequality, cg_doubling_aggregate, cg_subset_chain, cg_subset_step, cg_wheel_derivation, check_validity,
    clique_inequality, doubling_inequality, extremal_number, web_inequality, web_witness, wheel_inequality,
    wheel_type_ii_witnesses, wheel_witness, BlowupSpec, WitnessKind,
};
use turan_core::lp::{build_q, lp_max, Rational};
use turan_core::{CgDerivation, CompleteHypergraph, EdgeSet, Limits, LinearInequality, TuranError, WebSpec, WheelSpec};

use args::{
    CgCommand, CheckCommand, Cli, Command, CyclicFamily, Family, FamilyParams, InequalitySource, Kind, LiftForm,
};
use render::{edge_label, flat_csv, flat_text, scalar, Doc};

enum CliError {
    /// Bad flags or input values: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Compute(TuranError),
}

impl From<TuranError> for CliError {
    fn from(e: TuranError) -> Self {
        match e {
            TuranError::InvalidParameters(_)
            | TuranError::MalformedEdge { .. }
            | TuranError::AmbientMismatch { .. }
            | TuranError::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(m) = cli.max_edges {
        limits.max_edges = m;
    }
    match run(cli.command, &limits) {
        Ok(doc) => {
            print!("{}", doc.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, limits: &Limits) -> CliResult<Doc> {
    match command {
        Command::Ex { n, a, r } => ex(n, a, r, limits),
        Command::Table { a, n_max } => table(a, n_max),
        Command::Gen { family, params } => Ok(inequality_doc(&generate(family, &params, limits)?)),
        Command::Check(c) => check(c, limits),
        Command::Cg(c) => cg(c),
        Command::Lp {
            n,
            a,
            r,
            include_full_clique,
            export_lp,
        } => {
            let system = build_q(n, a, r, include_full_clique, limits)?;
            let ones = vec![Rational::from_integer(1.into()); system.variables()];
            if let Some(path) = export_lp {
                let text = system.to_lp_format(&ones, &format!("Q({n},{a},{r})"))?;
                fs::write(&path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let sol = lp_max(&system, &ones)?;
            let ex = extremal_number(n, a, r, limits)?;
            let v = json!({
                "n": n,
                "a": a,
                "r": r,
                "include_full_clique": include_full_clique,
                "rows": system.rows.len(),
                "value": format!("{}/{}", sol.value.numer(), sol.value.denom()),
                "floor": sol.floor()?,
                "ex": ex,
                "pivots": sol.pivots,
            });
            let keys = [
                "n",
                "a",
                "r",
                "include_full_clique",
                "rows",
                "value",
                "floor",
                "ex",
                "pivots",
            ];
            Ok(Doc {
                csv: flat_csv(&v, &keys),
                text: flat_text(&v, &keys),
                json: v,
            })
        }
        Command::Witness {
            family,
            l,
            a,
            r,
            kind,
            all,
        } => witness(family, l, a, r, kind, all),
    }
}

fn ex(n: usize, a: usize, r: usize, limits: &Limits) -> CliResult<Doc> {
    let value = extremal_number(n, a, r, limits)?;
    Ok(Doc {
        json: json!(value),
        csv: vec![
            vec!["n".into(), "a".into(), "r".into(), "ex".into()],
            vec![n.to_string(), a.to_string(), r.to_string(), value.to_string()],
        ],
        text: value.to_string(),
    })
}

fn table(a: usize, n_max: usize) -> CliResult<Doc> {
    let t = t_table(a, n_max)?;
    let rows: Vec<Value> = t.rows.iter().map(|&(n, ex)| json!({"n": n, "ex": ex})).collect();
    let mut csv = vec![vec!["n".to_string(), "ex".to_string()]];
    csv.extend(t.rows.iter().map(|(n, ex)| vec![n.to_string(), ex.to_string()]));
    let text = t
        .rows
        .iter()
        .map(|(n, ex)| format!("{n:>4} {ex:>12}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Doc {
        json: json!({"a": a, "rows": rows}),
        csv,
        text,
    })
}

fn need(value: Option<usize>, flag: &str, family: &str) -> CliResult<usize> {
    value.ok_or_else(|| usage(format!("{family} needs --{flag}")))
}

fn parse_multiplicities(items: &[String]) -> CliResult<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for item in items {
        let parsed = item
            .split_once(':')
            .and_then(|(v, m)| Some((v.trim().parse().ok()?, m.trim().parse().ok()?)));
        let Some((v, m)) = parsed else {
            return Err(usage(format!("multiplicity {item:?} is not of the form vertex:m")));
        };
        if out.insert(v, m).is_some() {
            return Err(usage(format!("vertex {v} given twice")));
        }
    }
    Ok(out)
}

fn generate(family: Family, p: &FamilyParams, limits: &Limits) -> CliResult<LinearInequality> {
    let name = format!("{family:?}").to_lowercase();
    let a = need(p.a, "a", &name)?;
    let r = p.r.unwrap_or(2);
    let ineq = match family {
        Family::Clique => {
            let n = need(p.n, "n", &name)?;
            let s = p.s.clone().unwrap_or_else(|| (1..=n).collect());
            clique_inequality(CompleteHypergraph::new(n, r)?, &s, a, limits)?
        }
        Family::Doubling => doubling_inequality(need(p.n, "n", &name)?, a, p.v.unwrap_or(1))?,
        Family::Blowup => {
            let spec = BlowupSpec::new(need(p.n, "n", &name)?, a, parse_multiplicities(&p.m)?)?;
            blowup_inequality(&spec)?
        }
        Family::Wheel => wheel_inequality(&WheelSpec::new(need(p.l, "l", &name)?, a, r)?)?,
        Family::Web => web_inequality(&WebSpec::new(need(p.l, "l", &name)?, a, r)?)?,
    };
    Ok(ineq)
}

/// The inequality and its clique size.
fn load(source: &InequalitySource, limits: &Limits) -> CliResult<(LinearInequality, usize)> {
    match (&source.ineq, source.gen) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let ineq: LinearInequality =
                serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let a = need(source.params.a, "a", "an inequality file")?;
            Ok((ineq, a))
        }
        (None, Some(family)) => Ok((generate(family, &source.params, limits)?, source.params.a.unwrap_or(0))),
        (None, None) => Err(usage("give --ineq FILE or --gen FAMILY")),
    }
}

fn check(command: CheckCommand, limits: &Limits) -> CliResult<Doc> {
    match command {
        CheckCommand::Valid { source } => {
            let (ineq, a) = load(&source, limits)?;
            let v = check_validity(&ineq, a, limits)?;
            let mut doc = serde_json::to_value(&v).expect("serializable");
            doc["label"] = json!(ineq.label());
            let keys = ["label", "valid", "max_lhs", "rhs"];
            let mut text = flat_text(&doc, &keys);
            if let Some(cert) = &v.certificate {
                text.push_str(&format!("\ncertificate: {}", edges_text(cert)));
            }
            Ok(Doc {
                csv: flat_csv(&doc, &keys),
                text,
                json: doc,
            })
        }
        CheckCommand::Facet { source, ambient } => {
            let (ineq, a) = load(&source, limits)?;
            let (ineq, ambient_set) = match ambient.as_str() {
                "support" => {
                    let s = ineq.support();
                    (ineq, s)
                }
                other => {
                    let n: usize = other
                        .strip_prefix("complete:")
                        .and_then(|n| n.parse().ok())
                        .ok_or_else(|| usage(format!("ambient {other:?} is neither `support` nor `complete:N`")))?;
                    let lifted = ineq.embed(n)?;
                    let full = EdgeSet::full(CompleteHypergraph::new(n, lifted.ambient().r)?);
                    (lifted, full)
                }
            };
            let verdict = is_facet(&ineq, a, &ambient_set, limits)?;
            let mut doc = serde_json::to_value(&verdict).expect("serializable");
            doc["label"] = json!(ineq.label());
            doc["ambient"] = json!(ambient);
            let keys = [
                "label",
                "ambient",
                "valid",
                "max_lhs",
                "rhs",
                "tight_count",
                "affine_rank",
                "ambient_dim",
                "is_facet",
                "truncated",
            ];
            Ok(Doc {
                csv: flat_csv(&doc, &keys),
                text: flat_text(&doc, &keys),
                json: doc,
            })
        }
        CheckCommand::Lift { source, into, form } => {
            let (ineq, a) = load(&source, limits)?;
            let lifted = ineq.embed(into)?;
            let g = EdgeSet::full(CompleteHypergraph::new(into, lifted.ambient().r)?);
            let result = match form {
                LiftForm::Rank => check_lift_rank_form(&lifted.support(), &g, a, limits)?,
                LiftForm::General => check_lift_general_form(&lifted, &g, a, limits)?,
            };
            let mut doc = serde_json::to_value(&result).expect("serializable");
            doc["label"] = json!(ineq.label());
            doc["into"] = json!(into);
            doc["form"] = json!(format!("{form:?}").to_lowercase());
            let keys = [
                "label",
                "into",
                "form",
                "holds",
                "edges_checked",
                "failing_edge",
                "truncated",
            ];
            let mut flat = doc.clone();
            flat["failing_edge"] = json!(edge_label(&doc["failing_edge"]));
            Ok(Doc {
                csv: flat_csv(&flat, &keys),
                text: flat_text(&flat, &keys),
                json: doc,
            })
        }
    }
}

fn cg(command: CgCommand) -> CliResult<Doc> {
    match command {
        CgCommand::Subset { s, n, a } => {
            let s = s.unwrap_or_else(|| (1..=n.unwrap_or(0)).collect());
            Ok(derivation_doc(&cg_subset_step(&s, a)?))
        }
        CgCommand::Chain { a, n } => {
            let steps = cg_subset_chain(a, n)?;
            let final_rhs = steps.last().map(|d| d.target.rhs());
            let mut csv = vec![derivation_header()];
            let mut text = Vec::new();
            for (i, d) in steps.iter().enumerate() {
                csv.extend(derivation_rows(d, Some(i + 1)));
                text.push(format!("step {}: {}", i + 1, derivation_text(d)));
            }
            Ok(Doc {
                json: json!({"a": a, "n": n, "steps": steps, "final_rhs": final_rhs}),
                csv,
                text: text.join("\n\n"),
            })
        }
        CgCommand::Doubling { n, a } => Ok(derivation_doc(&cg_doubling_aggregate(n, a)?)),
        CgCommand::Wheel { l, a, r } => Ok(derivation_doc(&cg_wheel_derivation(&WheelSpec::new(l, a, r)?)?)),
    }
}

fn witness(family: CyclicFamily, l: usize, a: usize, r: usize, kind: Kind, all: bool) -> CliResult<Doc> {
    let wkind = match kind {
        Kind::I => WitnessKind::TypeI,
        Kind::II => WitnessKind::TypeII,
    };
    let (rhs, sets) = match family {
        CyclicFamily::Wheel => {
            let spec = WheelSpec::new(l, a, r)?;
            let rhs = wheel_inequality(&spec)?.rhs();
            let sets = if all {
                if kind != Kind::II {
                    return Err(usage("--all lists type II witnesses; pass --kind II"));
                }
                wheel_type_ii_witnesses(&spec)?
            } else {
                vec![wheel_witness(&spec, wkind)?]
            };
            (rhs, sets)
        }
        CyclicFamily::Web => {
            if all {
                return Err(usage("--all is available for wheels only"));
            }
            let spec = WebSpec::new(l, a, r)?;
            (web_inequality(&spec)?.rhs(), vec![web_witness(&spec, wkind)?])
        }
    };
    let family_name = format!("{family:?}").to_lowercase();
    let kind_name = format!("{kind:?}");
    let mut csv = vec![vec!["witness".to_string(), "edge".to_string()]];
    let mut text = vec![format!("{family_name}(l={l},a={a},r={r}) type {kind_name}, rhs {rhs}")];
    for (i, set) in sets.iter().enumerate() {
        for e in set.sorted_vertex_lists() {
            csv.push(vec![
                (i + 1).to_string(),
                e.iter().map(usize::to_string).collect::<Vec<_>>().join("-"),
            ]);
        }
        text.push(format!("{} edges: {}", set.len(), edges_text(set)));
    }
    Ok(Doc {
        json: json!({
            "family": family_name,
            "l": l,
            "a": a,
            "r": r,
            "kind": kind_name,
            "rhs": rhs,
            "witnesses": sets,
        }),
        csv,
        text: text.join("\n"),
    })
}

fn edges_text(set: &EdgeSet) -> String {
    set.sorted_vertex_lists()
        .iter()
        .map(|e| format!("({})", e.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn inequality_text(ineq: &LinearInequality) -> String {
    let v = serde_json::to_value(ineq).expect("serializable");
    let terms: Vec<String> = v["coeffs"]
        .as_array()
        .expect("coeffs array")
        .iter()
        .map(|t| {
            let c = scalar(&t["c"]);
            let e = edge_label(&t["edge"]);
            if c == "1" {
                format!("x[{e}]")
            } else {
                format!("{c} x[{e}]")
            }
        })
        .collect();
    format!("{}: {} <= {}", ineq.label(), terms.join(" + "), ineq.rhs())
}

fn inequality_doc(ineq: &LinearInequality) -> Doc {
    let json = serde_json::to_value(ineq).expect("serializable");
    let mut csv = vec![vec!["term".to_string(), "edge".to_string(), "value".to_string()]];
    for t in json["coeffs"].as_array().expect("coeffs array") {
        csv.push(vec!["coeff".into(), edge_label(&t["edge"]), scalar(&t["c"])]);
    }
    csv.push(vec!["rhs".into(), String::new(), ineq.rhs().to_string()]);
    Doc {
        text: inequality_text(ineq),
        csv,
        json,
    }
}

fn derivation_header() -> Vec<String> {
    ["step", "role", "weight", "label", "rhs"].map(String::from).to_vec()
}

fn derivation_rows(d: &CgDerivation, step: Option<usize>) -> Vec<Vec<String>> {
    let step = step.map(|s| s.to_string()).unwrap_or_default();
    let mut rows: Vec<Vec<String>> = d
        .sources
        .iter()
        .map(|(ineq, w)| {
            vec![
                step.clone(),
                "source".into(),
                format!("{}/{}", w.numer(), w.denom()),
                ineq.label().into(),
                ineq.rhs().to_string(),
            ]
        })
        .collect();
    rows.push(vec![
        step,
        "target".into(),
        String::new(),
        d.target.label().into(),
        d.target.rhs().to_string(),
    ]);
    rows
}

fn derivation_text(d: &CgDerivation) -> String {
    let mut lines: Vec<String> = d
        .sources
        .iter()
        .map(|(ineq, w)| format!("  {}/{} * {}", w.numer(), w.denom(), inequality_text(ineq)))
        .collect();
    let rhs = d.combined_rhs().expect("verified derivation");
    lines.push(format!("  combined rhs {}/{}, rounded down", rhs.numer(), rhs.denom()));
    lines.push(format!("  => {}", inequality_text(&d.target)));
    lines.join("\n")
}

fn derivation_doc(d: &CgDerivation) -> Doc {
    let mut csv = vec![derivation_header()];
    csv.extend(derivation_rows(d, None));
    Doc {
        json: serde_json::to_value(d).expect("serializable"),
        csv,
        text: derivation_text(d),
    }
}
