use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::json;

use wpcurve::companion::{
    arnold_table, audit, polyhedral_realize, render_table, twisted_companion, PolyhedralGroup,
};
use wpcurve::dominance::{build_positive_dominance, emit_dot, validate};
use wpcurve::fuchsian::{
    certificate_from_triangle, certify_curve, certify_torsionfree_kernel, fox_witness_search_with,
    presentation, GeneratorImages, OrbifoldPresentation, WitnessCertificate,
};
use wpcurve::perm::{group_order, parse_cycles, PermGroup, Permutation};
use wpcurve::{averaged_euler_form, classify, euler_characteristic, K0Class, WeightedCurve};

use crate::config::Config;
use crate::{CliError, Command, CurveArgs, K0Args, Output, PermCommand};

pub fn dispatch(command: &Command, config: &Config) -> Result<Output, CliError> {
    match command {
        Command::Chi(args) => {
            let curve = parse_curve(args)?;
            let chi = euler_characteristic(&curve);
            Ok(Output {
                command: "chi",
                text: chi.to_string(),
                json: json!({ "curve": curve, "chi": chi }),
                dot: None,
            })
        }
        Command::Classify(args) => {
            let curve = parse_curve(args)?;
            let class = classify(&curve);
            Ok(Output {
                command: "classify",
                text: class.to_string(),
                json: json!({
                    "curve": curve,
                    "chi": euler_characteristic(&curve),
                    "trisection": class.to_string(),
                }),
                dot: None,
            })
        }
        Command::K0(args) => k0(args),
        Command::Perm(op) => perm(op, config),
        Command::Presentation(args) => {
            let curve = parse_curve(args)?;
            let pres = presentation(&curve);
            let relations: Vec<String> = pres.relations().iter().map(ToString::to_string).collect();
            let generators: Vec<String> = pres.generators().iter().map(ToString::to_string).collect();
            Ok(Output {
                command: "presentation",
                text: pres.to_string(),
                json: json!({
                    "presentation": pres,
                    "generators": generators,
                    "relations": relations,
                }),
                dot: None,
            })
        }
        Command::Witness(args) => {
            let max_degree = args.max_degree.unwrap_or(config.max_witness_degree);
            let w = fox_witness_search_with(args.a, args.b, args.c, max_degree, config.worker_count)?;
            let mut text = format!("c1 = {}\nc2 = {}\nc3 = {}\ndegree = {}", w.c1, w.c2, w.c3, w.degree);
            let mut doc = json!({ "witness": w });
            if args.certify {
                let cert = certificate_from_triangle(&w, config.max_group_order_cap)?;
                let _ = write!(text, "\nindex = {}\ntorsionfree = {}", cert.image_group_order, cert.torsionfree);
                doc["certificate"] = serde_json::to_value(&cert).expect("certificate serializes");
            }
            Ok(Output {
                command: "witness",
                text,
                json: doc,
                dot: None,
            })
        }
        Command::Certify(args) => {
            let cert = if let Some(path) = &args.images {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                let input: CertifyInput = serde_json::from_str(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                certify_torsionfree_kernel(&input.presentation, &input.images, config.max_group_order_cap)?
            } else if !args.curve.is_empty() {
                let curve = parse_curve(&CurveArgs {
                    curve: args.curve.clone(),
                })?;
                certify_curve(
                    &curve,
                    args.max_degree.unwrap_or(config.max_witness_degree),
                    config.max_group_order_cap,
                    config.worker_count,
                )?
            } else {
                return Err(CliError::Usage("certify needs --images <FILE> or a curve g=.. w=..".into()));
            };
            Ok(Output {
                command: "certify",
                text: certificate_text(&cert),
                json: serde_json::to_value(&cert).expect("certificate serializes"),
                dot: None,
            })
        }
        Command::Companion(args) => {
            let weights = parse_list(&args.weights)?;
            let mut c = twisted_companion(&weights)?;
            if let Some(l) = &args.lambda {
                c = c.with_parameter(l.clone());
            }
            let mut text = format!(
                "weights = {}\ndegrees = {}\ngroup_order = {}\nchi = {}\nsmooth = {}",
                join(&c.source_weights),
                join(&c.degrees),
                c.group_order,
                c.chi,
                c.smooth
            );
            if let Some(g) = &c.genus {
                let _ = write!(text, "\ngenus = {g}");
            }
            Ok(Output {
                command: "companion",
                text,
                json: serde_json::to_value(&c).expect("companion serializes"),
                dot: None,
            })
        }
        Command::Realize(args) => {
            let group = parse_polyhedral(&args.group)?;
            let eps = parse_eps(&args.eps)?;
            let rec = polyhedral_realize(group, eps, args.a, args.r)?;
            let quotient = rec.quotient();
            let mut text = format!(
                "quotient = {quotient}\ngroup = {}\ngroup_order = {}\nchi_quotient = {}\nchi_cover = {}",
                rec.group_description, rec.group_order, rec.chi_quotient, rec.chi_cover
            );
            if let Some(g) = &rec.genus_cover {
                let _ = write!(text, "\ngenus_cover = {g}");
            }
            Ok(Output {
                command: "realize",
                text,
                json: serde_json::to_value(&rec).expect("record serializes"),
                dot: None,
            })
        }
        Command::Arnold { audit: with_audit } => {
            let rows = arnold_table();
            let mut text = render_table(&rows);
            let mut doc = json!({ "rows": rows });
            if *with_audit {
                let summary = audit(&rows);
                let bad: Vec<String> = summary
                    .inconsistent
                    .iter()
                    .map(|[a, b, c]| format!("<{a},{b},{c}>"))
                    .collect();
                let _ = write!(
                    text,
                    "\naudit: {} of {} rows consistent; inconsistent: {}",
                    summary.consistent,
                    summary.rows,
                    if bad.is_empty() { "none".to_string() } else { bad.join(", ") }
                );
                doc["audit"] = serde_json::to_value(&summary).expect("summary serializes");
            }
            Ok(Output {
                command: "arnold",
                text,
                json: doc,
                dot: None,
            })
        }
        Command::Dominance { nmax, amax } => {
            let graph = build_positive_dominance(*nmax, *amax);
            let violations = validate(&graph);
            let mut text = format!(
                "nodes = {}\nedges = {}\nviolations = {}",
                graph.nodes.len(),
                graph.edges.len(),
                violations.len()
            );
            for v in &violations {
                let _ = write!(text, "\n  {v}");
            }
            for e in &graph.edges {
                let _ = write!(
                    text,
                    "\n{} -> {} [{}, |G|={}]",
                    graph.nodes[e.source].curve,
                    graph.nodes[e.target].curve,
                    e.group,
                    e.order
                );
            }
            let terminal: Vec<String> = graph.terminal_nodes().iter().map(ToString::to_string).collect();
            Ok(Output {
                command: "dominance",
                text,
                json: json!({
                    "graph": graph,
                    "terminal": terminal,
                    "violations": violations,
                }),
                dot: Some(emit_dot(&graph)),
            })
        }
    }
}

#[derive(Deserialize)]
struct CertifyInput {
    presentation: OrbifoldPresentation,
    images: GeneratorImages,
}

fn certificate_text(cert: &WitnessCertificate) -> String {
    let mut text = format!("presentation = {}", cert.presentation);
    let named = |prefix: &str, ps: &[Permutation]| -> String {
        ps.iter()
            .enumerate()
            .map(|(i, p)| format!("\n{prefix}{} -> {p}", i + 1))
            .collect()
    };
    text.push_str(&named("a", &cert.images.alpha));
    text.push_str(&named("b", &cert.images.beta));
    text.push_str(&named("s", &cert.images.sigma));
    let _ = write!(
        text,
        "\nindex = {}\ntorsionfree = {}\nnormal = {}",
        cert.image_group_order, cert.torsionfree, cert.normal
    );
    if let Some(r) = &cert.reduction {
        let _ = write!(text, "\nreduction = {r}");
    }
    text
}

fn k0(args: &K0Args) -> Result<Output, CliError> {
    let curve = parse_curve(&args.curve)?;
    let ints = |xs: &[String]| -> Result<Vec<BigInt>, CliError> {
        xs.iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| CliError::Usage(format!("`{s}` is not an integer")))
            })
            .collect()
    };
    let (ranks, degrees) = (ints(&args.rank)?, ints(&args.degree)?);
    if ranks.len() != degrees.len() || ranks.len() > 2 {
        return Err(CliError::Usage(
            "give one or two classes, each as --rank R --degree D".into(),
        ));
    }
    let x = K0Class::new(ranks[0].clone(), degrees[0].clone());
    let y = match (args.simple, ranks.len()) {
        (Some(w), 1) => K0Class::simple_at_weight(&curve, w)?,
        (Some(_), _) => return Err(CliError::Usage("--simple replaces the second class".into())),
        (None, 2) => K0Class::new(ranks[1].clone(), degrees[1].clone()),
        (None, _) => x.clone(),
    };
    let value = averaged_euler_form(&curve, &x, &y);
    Ok(Output {
        command: "k0",
        text: value.to_string(),
        json: json!({ "curve": curve, "x": x, "y": y, "value": value }),
        dot: None,
    })
}

fn perm(op: &PermCommand, config: &Config) -> Result<Output, CliError> {
    let parse_all = |xs: &[String]| -> Result<Vec<Permutation>, CliError> {
        xs.iter().map(|s| parse_cycles(s).map_err(CliError::from)).collect()
    };
    let (text, json) = match op {
        PermCommand::Order { perm } => {
            let p = parse_cycles(perm)?;
            let order = p.order();
            (order.to_string(), json!({ "perm": p, "order": order.to_string() }))
        }
        PermCommand::Mul { perms } => {
            let ps = parse_all(perms)?;
            let product = ps.iter().fold(Permutation::identity(), |acc, p| acc.compose(p));
            (product.to_string(), json!({ "factors": ps, "product": product }))
        }
        PermCommand::GroupOrder { gens } => {
            let gs = parse_all(gens)?;
            let order = group_order(&gs, config.max_group_order_cap)?;
            (order.to_string(), json!({ "generators": gs, "order": order.to_string() }))
        }
        PermCommand::Simple { gens } => {
            let gs = parse_all(gens)?;
            let group = PermGroup::with_cap(gs.clone(), config.max_group_order_cap)?;
            let simple = group.is_simple(config.max_group_order_cap, config.worker_count)?;
            (
                simple.to_string(),
                json!({ "generators": gs, "order": group.order().to_string(), "simple": simple }),
            )
        }
    };
    Ok(Output {
        command: "perm",
        text,
        json,
        dot: None,
    })
}

fn parse_curve(args: &CurveArgs) -> Result<WeightedCurve, CliError> {
    let mut genus = 0u64;
    let mut weights = Vec::new();
    for token in &args.curve {
        match token.split_once('=') {
            Some(("g", v)) => {
                genus = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("`{v}` is not a genus")))?
            }
            Some(("w", v)) => weights = parse_list(v)?,
            _ => {
                return Err(CliError::Usage(format!(
                    "expected g=<genus> or w=<a1,...>, got `{token}`"
                )))
            }
        }
    }
    Ok(WeightedCurve::new(genus, weights)?)
}

fn parse_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("`{s}` is not a nonnegative integer")))
        })
        .collect()
}

fn parse_polyhedral(text: &str) -> Result<PolyhedralGroup, CliError> {
    let group = match text {
        "A4" | "T" => PolyhedralGroup::Platonic(3),
        "S4" | "O" => PolyhedralGroup::Platonic(4),
        "A5" | "I" => PolyhedralGroup::Platonic(5),
        _ => {
            let (kind, n) = text.split_at(text.len().min(1));
            let n: u64 = n
                .parse()
                .map_err(|_| CliError::Usage(format!("unknown polyhedral group `{text}`")))?;
            match kind {
                "C" => PolyhedralGroup::Cyclic(n),
                "D" => PolyhedralGroup::Dihedral(n),
                "P" => PolyhedralGroup::Platonic(n),
                _ => return Err(CliError::Usage(format!("unknown polyhedral group `{text}`"))),
            }
        }
    };
    Ok(group.validate()?)
}

fn parse_eps(text: &str) -> Result<[u8; 3], CliError> {
    let digits: Vec<u8> = text
        .chars()
        .filter(|c| *c != ',')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::Usage(format!("eps must consist of 0 and 1, got `{text}`"))),
        })
        .collect::<Result<_, _>>()?;
    digits
        .try_into()
        .map_err(|_| CliError::Usage(format!("eps needs exactly three flags, got `{text}`")))
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
