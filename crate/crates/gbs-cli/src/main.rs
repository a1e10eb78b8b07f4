use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use gbs::brandt::{verify_groupoid, NormalGliderIdeal};
use gbs::enumerate::{
    classify, enumerate_gbs_csa, enumerate_gbs_field, realize_csa, BsPoint, GbsElement, Route, Verdict,
};
use gbs::filtration::Filt;
use gbs::glider::{associated_strong, classify_subglider, Glider, TrivialityVerdict};
use gbs::orders::{ceil_div, ceil_sum_compare, maxorder_strong_check, radical, CeilCmp, OrderData};
use gbs::rank2::{body_shift, classify_z2_glider, realize_z2, residue_glider, vertical_body_glider, Z2Glider, Z2Verdict};
use gbs::suite;
use gbs::tensor::{gbs_map, tensor_glider};
use gbs_cli::io::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gbs", version, about = "Glider Brauer-Severi computations over exact fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Shift window `a:b`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[arg(long, global = true)]
    filtration: Option<String>,
    /// Glider file; `subglider` takes it twice (N, then M).
    #[arg(long, global = true)]
    glider: Vec<String>,
    /// `m2r`, `hurwitz2`, or an order file.
    #[arg(long, global = true)]
    order: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, global = true)]
    sample: Option<String>,
    #[arg(long, global = true)]
    points: Option<String>,
    #[arg(long, global = true)]
    ext: Option<String>,
    /// `m` or `m,n`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    shift: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate (F_nK)_* over a window.
    FieldEnum,
    /// Enumerate (F_mA·v)_* for the given points and window.
    CsaEnum,
    /// Classify a glider.
    Classify,
    /// Triviality type of N inside M.
    Subglider,
    /// Is the filtration strong?
    StrongCheck,
    /// The step e of a strong e-step filtration.
    Estep,
    /// The strong filtration with the positive part of F and negative part M.
    AssocStrong,
    /// Strongness of F_{-1}A = P^k over a maximal order.
    MaxorderCheck,
    /// Pairs (k, l) with ceil(k/e) + ceil(l/e) > ceil((k+l)/e).
    CeilTable,
    /// Image of GBS elements under extension of scalars.
    TensorMap,
    #[command(subcommand)]
    Brandt(BrandtCmd),
    #[command(subcommand)]
    Rank2(Rank2Cmd),
    /// Run the randomized engine suites (seed from GBS_SEED).
    Selftest,
}

#[derive(Subcommand)]
enum BrandtCmd {
    Mul,
    Inv,
    Unit,
    Verify,
}

#[derive(Subcommand)]
enum Rank2Cmd {
    Classify,
    Body,
    Residue,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        Failure::Usage(e.0)
    }
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

type Res<T> = Result<T, Failure>;

/// What a command produced: JSON results, text lines, and whether its checks passed.
struct Report {
    results: Value,
    text: Vec<String>,
    citations: Vec<&'static str>,
    ok: bool,
}

impl Report {
    fn new(results: Value, text: Vec<String>, citations: &[&'static str]) -> Report {
        Report { results, text, citations: citations.to_vec(), ok: true }
    }
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Res<&'a str> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn parse_window(s: &str) -> Res<(i64, i64)> {
    let bad = || Failure::Usage(format!("--window expects a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b || b - a > 1000 {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_ints(s: &str, flag: &str) -> Res<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("--{flag} expects integers, got {s:?}"))))
        .collect()
}

fn load_filt(cli: &Cli) -> Res<Filt> {
    Ok(read_doc::<FiltrationJson>(need(&cli.filtration, "filtration")?)?.build()?)
}

fn load_glider(path: &str) -> Res<Glider> {
    Ok(read_doc::<GliderJson>(path)?.build()?)
}

fn one_glider(cli: &Cli) -> Res<Glider> {
    match cli.glider.as_slice() {
        [g] => load_glider(g),
        [] => Err(Failure::Usage("missing --glider".into())),
        _ => Err(Failure::Usage("expected one --glider".into())),
    }
}

fn glider_value(g: &Glider) -> Value {
    GliderJson::from_glider(g).ok().map(|j| serde_json::to_value(j).unwrap()).unwrap_or(Value::Null)
}

fn verdict_json(v: &TrivialityVerdict) -> Value {
    match v {
        TrivialityVerdict::NotSubglider { level, .. } => json!({ "type": "not-subglider", "level": level }),
        TrivialityVerdict::TrivialT1(n) => json!({ "type": "T1", "at": n }),
        TrivialityVerdict::TrivialT2(n) => json!({ "type": "T2", "at": n }),
        TrivialityVerdict::TrivialT3 { alpha } => json!({ "type": "T3", "alpha": alpha }),
        TrivialityVerdict::NonTrivial { level, sandwich } => json!({
            "type": "non-trivial",
            "level": level,
            "sandwich": sandwich.as_ref().map(|(k, w)| json!({ "between": [k, k + 1], "lattice": LatticeJson::from_lattice(w) })),
        }),
    }
}

fn verdict_text(v: &TrivialityVerdict) -> String {
    match v {
        TrivialityVerdict::NotSubglider { level, .. } => format!("not a subglider (level {level})"),
        TrivialityVerdict::TrivialT1(n) => format!("trivial T1 at {n}"),
        TrivialityVerdict::TrivialT2(n) => format!("trivial T2 at {n}"),
        TrivialityVerdict::TrivialT3 { alpha } => format!("trivial T3, alpha = {alpha:?}"),
        TrivialityVerdict::NonTrivial { level, sandwich: Some((k, w)) } => {
            format!("non-trivial at level {level}: {w} strictly between M_{k} and M_{}", k + 1)
        }
        TrivialityVerdict::NonTrivial { level, sandwich: None } => format!("non-trivial at level {level}"),
    }
}

fn classify_report(v: &Verdict, citation: &'static str) -> Report {
    let (results, text) = match v {
        Verdict::Irreducible { element, route } => {
            let route = match route {
                Route::Direct => "direct",
                Route::AssociatedStrong => "associated-strong",
            };
            (
                json!({ "verdict": "irreducible", "element": element_json(element), "route": route, "citation": citation }),
                vec![format!("irreducible: {element}")],
            )
        }
        Verdict::Reducible { witness, verdict } => (
            json!({
                "verdict": "reducible",
                "witness": glider_value(witness),
                "triviality": verdict_json(verdict),
                "citation": "def:triviality",
            }),
            vec![format!("reducible: witness is {}", verdict_text(verdict))],
        ),
        Verdict::OutOfClass(why) => (
            json!({ "verdict": "out-of-class", "reason": why, "citation": citation }),
            vec![format!("out of class: {why}")],
        ),
    };
    Report::new(results, text, &[citation])
}

fn elements_report(els: &[GbsElement], citation: &'static str) -> Report {
    let mut text = vec![format!("{} elements", els.len())];
    text.extend(els.iter().map(|e| e.to_string()));
    Report::new(json!({ "count": els.len(), "elements": els.iter().map(element_json).collect::<Vec<_>>() }), text, &[citation])
}

fn builtin_order(cli: &Cli) -> Res<OrderData> {
    match need(&cli.order, "order")? {
        "m2r" => Ok(OrderData::mnr(&gbs::lattice::BaseRing::padic(5), 2)),
        "hurwitz2" => Ok(OrderData::hurwitz2()),
        path => Ok(read_doc::<OrderJson>(path)?.build()?),
    }
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.cmd {
        Cmd::FieldEnum => {
            let (a, b) = parse_window(need(&cli.window, "window")?)?;
            let Filt::Field(f) = load_filt(cli)? else {
                return Err(Failure::Usage("field-enum needs a field filtration".into()));
            };
            Ok(elements_report(&enumerate_gbs_field(&f, a, b), "thm:gbsfield"))
        }
        Cmd::CsaEnum => {
            let (a, b) = parse_window(need(&cli.window, "window")?)?;
            let Filt::Algebra(fa) = load_filt(cli)? else {
                return Err(Failure::Usage("csa-enum needs an algebra filtration".into()));
            };
            let pts = read_doc::<PointsJson>(need(&cli.points, "points")?)?.build()?;
            let els = enumerate_gbs_csa(&fa, a, b, &pts).map_err(domain)?;
            Ok(elements_report(&els, "cor:gbscsa"))
        }
        Cmd::Classify => {
            let g = one_glider(cli)?;
            let cite = if matches!(*g.filt, Filt::Field(_)) { "thm:gbsfield" } else { "prop:relativecsa" };
            Ok(classify_report(&classify(&g), cite))
        }
        Cmd::Subglider => {
            let [n, m] = cli.glider.as_slice() else {
                return Err(Failure::Usage("subglider takes --glider N --glider M".into()));
            };
            let v = classify_subglider(&load_glider(n)?, &load_glider(m)?).map_err(domain)?;
            let results = json!({ "triviality": verdict_json(&v), "trivial": v.is_trivial(), "citation": "def:triviality" });
            Ok(Report::new(results, vec![verdict_text(&v)], &["def:triviality"]))
        }
        Cmd::StrongCheck => {
            let f = load_filt(cli)?;
            let s = f.is_strong();
            let word = if s { "strong" } else { "not strong" };
            Ok(Report::new(json!({ "strong": s, "citation": "def:strong" }), vec![word.into()], &["def:strong"]))
        }
        Cmd::Estep => {
            let f = load_filt(cli)?;
            let e = match &f {
                Filt::Field(fk) => fk.estep(),
                Filt::Algebra(fa) => fa.base.estep().filter(|_| fa.is_strong()),
            };
            let text = match e {
                Some(e) => format!("strong {e}-step"),
                None => "not a strong e-step filtration".into(),
            };
            Ok(Report::new(json!({ "estep": e, "citation": "prop:estep" }), vec![text], &["prop:estep"]))
        }
        Cmd::AssocStrong => {
            let Filt::Field(f) = load_filt(cli)? else {
                return Err(Failure::Usage("assoc-strong needs a field filtration".into()));
            };
            let g = one_glider(cli)?;
            let s = associated_strong(&f, &g).map_err(domain)?;
            let fj = FiltrationJson::from_filt(&Filt::Field(s.clone()));
            let text = vec![format!("strong: {}", s.is_strong()), format!("phi(-1) = {:?}", s.phi.at(-1))];
            Ok(Report::new(json!({ "filtration": fj, "citation": "prop:associatedfil" }), text, &["prop:associatedfil"]))
        }
        Cmd::MaxorderCheck => {
            let b = builtin_order(cli)?;
            let ks = parse_ints(need(&cli.k, "k")?, "k")?;
            if ks.len() != b.base().rank() {
                return Err(Failure::Usage(format!("--k needs {} exponents", b.base().rank())));
            }
            let s = maxorder_strong_check(&b, &ks).map_err(domain)?;
            let es = (0..b.base().rank()).map(|j| radical(&b, j).map(|p| p.e)).collect::<Result<Vec<_>, _>>().map_err(domain)?;
            let word = if s { "strong" } else { "not strong" };
            let text = vec![format!("{word} (ramification {es:?}, k = {ks:?})")];
            let results = json!({ "strong": s, "ramification": es, "k": ks, "citation": "thm:maxorder" });
            Ok(Report::new(results, text, &["thm:maxorder"]))
        }
        Cmd::CeilTable => {
            let e = parse_ints(need(&cli.k, "k")?, "k")?;
            let [e] = e.as_slice() else { return Err(Failure::Usage("ceil-table takes --k e".into())) };
            if *e < 1 || *e > 1000 {
                return Err(Failure::Usage("--k must be in 1..=1000".into()));
            }
            let (a, b) = match &cli.window {
                Some(w) => parse_window(w)?,
                None => (0, 2 * e),
            };
            let mut strict = vec![];
            for k in a..=b {
                for l in a..=b {
                    if ceil_sum_compare(*e, k, l).map_err(domain)? == CeilCmp::Strict {
                        strict.push([k, l]);
                    }
                }
            }
            let mut text = vec![format!("e = {e}: {} strict pairs in [{a}, {b}]²", strict.len())];
            text.extend(strict.iter().map(|[k, l]| {
                format!("{k} {l}: {} + {} > {}", ceil_div(*k, *e), ceil_div(*l, *e), ceil_div(k + l, *e))
            }));
            Ok(Report::new(json!({ "e": e, "window": [a, b], "strict": strict, "citation": "lem:ceil" }), text, &["lem:ceil"]))
        }
        Cmd::TensorMap => tensor_map(cli),
        Cmd::Brandt(c) => brandt(cli, c),
        Cmd::Rank2(c) => rank2(cli, c),
        Cmd::Selftest => Ok(selftest()),
    }
}

fn tensor_map(cli: &Cli) -> Res<Report> {
    let f = Arc::new(load_filt(cli)?);
    let x = read_doc::<ExtensionJson>(need(&cli.ext, "ext")?)?.build()?;
    let shifts = match (&cli.shift, &cli.window) {
        (Some(s), None) => parse_ints(s, "shift")?,
        (None, Some(w)) => {
            let (a, b) = parse_window(w)?;
            (a..=b).collect()
        }
        _ => return Err(Failure::Usage("tensor-map takes one of --shift or --window".into())),
    };
    let els: Vec<GbsElement> = match &*f {
        Filt::Field(_) => shifts.iter().map(|&n| GbsElement::field(n)).collect(),
        Filt::Algebra(_) => {
            let pts = read_doc::<PointsJson>(need(&cli.points, "points")?)?.build()?;
            pts.iter().flat_map(|p| shifts.iter().map(|&n| GbsElement::csa(p.clone(), n))).collect()
        }
    };
    let mut rows = vec![];
    let mut text = vec![];
    let mut ok = true;
    for g in &els {
        let (img, target) = gbs_map(g, &f, &x).map_err(domain)?;
        // the tensored glider should classify to the image when w is unramified
        let agrees = if x.e == 1 {
            let t = tensor_glider(&gbs::enumerate::realize(f.clone(), g), &x).map_err(domain)?;
            Some(classify(&t).element() == Some(&img))
        } else {
            None
        };
        let realized = classify(&gbs::enumerate::realize(target, &img)).element() == Some(&img);
        ok &= realized && agrees != Some(false);
        text.push(format!("{g} -> {img}"));
        rows.push(json!({ "source": element_json(g), "image": element_json(&img), "tensorAgrees": agrees, "imageIrreducible": realized }));
    }
    let mut r = Report::new(json!({ "extension": ExtensionJson::from_ext(&x), "map": rows, "citation": "prop:map" }), text, &["prop:map"]);
    r.ok = ok;
    Ok(r)
}

fn sample(cli: &Cli, at_least: usize) -> Res<Vec<NormalGliderIdeal>> {
    let s = read_doc::<SampleJson>(need(&cli.sample, "sample")?)?.build()?;
    if s.len() < at_least {
        return Err(Failure::Usage(format!("the sample needs at least {at_least} elements")));
    }
    Ok(s)
}

fn brandt(cli: &Cli, c: &BrandtCmd) -> Res<Report> {
    match c {
        BrandtCmd::Mul => {
            let s = sample(cli, 2)?;
            let p = s[0].product(&s[1]).map_err(domain)?;
            let proper = s[0].proper_product(&s[1]).is_ok();
            let text = vec![format!("M·N: prefix length {}, period {}, proper {proper}", p.len(), p.period)];
            Ok(Report::new(json!({ "product": ideal_json(&p), "proper": proper, "citation": "lem:product" }), text, &["lem:product"]))
        }
        BrandtCmd::Inv => {
            let s = sample(cli, 1)?;
            let i = s[0].inverse().map_err(domain)?;
            let back = i.inverse().map_err(domain)?.same_chain(&s[0]);
            let text = vec![format!("inverse: prefix length {}", i.len()), format!("double inverse is M: {back}")];
            let mut r = Report::new(json!({ "inverse": ideal_json(&i), "doubleInverse": back, "citation": "prop:inverse" }), text, &["prop:inverse"]);
            r.ok = back;
            Ok(r)
        }
        BrandtCmd::Unit => {
            let s = sample(cli, 1)?;
            let (el, er) = (s[0].unit_left().map_err(domain)?, s[0].unit_right().map_err(domain)?);
            let ml = el.same_chain(&s[0].modulizer_left().map_err(domain)?);
            let mr = er.same_chain(&s[0].modulizer_right().map_err(domain)?);
            let text = vec![format!("left unit equals the left modulizer: {ml}"), format!("right unit equals the right modulizer: {mr}")];
            let results = json!({
                "left": ideal_json(&el), "right": ideal_json(&er),
                "leftIsModulizer": ml, "rightIsModulizer": mr, "citation": "prop:u",
            });
            let mut r = Report::new(results, text, &["prop:u"]);
            r.ok = ml && mr;
            Ok(r)
        }
        BrandtCmd::Verify => {
            let s = sample(cli, 1)?;
            let rep = verify_groupoid(&s).map_err(domain)?;
            let cites = ["lem:product", "lem:product", "lem:product", "prop:u", "prop:inverse"];
            let axioms: Vec<Value> = rep
                .axioms
                .iter()
                .map(|a| {
                    let mut v = json!({
                        "axiom": a.axiom,
                        "status": if a.passed { "pass" } else { "fail" },
                        "checked": a.checked,
                        "citation": cites[(a.axiom as usize - 1).min(4)],
                    });
                    if let Some(c) = &a.counterexample {
                        v["counterexample"] = json!({ "description": c });
                    }
                    v
                })
                .collect();
            let passed = rep.axioms.iter().filter(|a| a.passed).count();
            let mut text = vec![format!("{passed}/{} axioms pass on {} elements", rep.axioms.len(), s.len())];
            for a in &rep.axioms {
                let st = if a.passed { "pass" } else { "fail" };
                text.push(format!("axiom {}: {st} ({} checks)", a.axiom, a.checked));
            }
            if !rep.blocked.is_empty() {
                text.push(format!("non-proper pairs: {:?}", rep.blocked));
            }
            let mut r = Report::new(json!({ "axioms": axioms, "blocked": rep.blocked }), text, &["lem:product", "prop:u", "prop:inverse"]);
            r.ok = rep.all_pass();
            Ok(r)
        }
    }
}

fn z2_input(cli: &Cli) -> Res<Z2Glider> {
    match (cli.glider.as_slice(), &cli.shift) {
        ([g], None) => Ok(read_doc::<Z2GliderJson>(g)?.build()?),
        ([], Some(s)) => match parse_ints(s, "shift")?.as_slice() {
            [m, n] => {
                let (j, i) = match &cli.window {
                    Some(w) => parse_window(w).map(|(a, b)| (a.max(0), b.max(0)))?,
                    None => (2, 2),
                };
                Ok(realize_z2(*m, *n, (j, i)))
            }
            _ => Err(Failure::Usage("--shift expects m,n".into())),
        },
        _ => Err(Failure::Usage("rank2 takes either --glider PATH or --shift m,n".into())),
    }
}

fn rank2(cli: &Cli, c: &Rank2Cmd) -> Res<Report> {
    match c {
        Rank2Cmd::Classify => {
            let g = z2_input(cli)?;
            let (results, text) = match classify_z2_glider(&g) {
                Z2Verdict::Irreducible { m, n } => (
                    json!({ "verdict": "irreducible", "element": { "kind": "rank2", "shift": [m, n] }, "citation": "thm:gbs2" }),
                    format!("irreducible: shift ({m}, {n})"),
                ),
                Z2Verdict::Reducible { witness, cell, between } => (
                    json!({
                        "verdict": "reducible",
                        "witness": Z2GliderJson::from_glider(&witness),
                        "cell": [cell.0, cell.1],
                        "between": [[between.0 .0, between.0 .1], [between.1 .0, between.1 .1]],
                        "citation": "thm:gbs2",
                    }),
                    format!("reducible: witness level at {cell:?} strictly between {:?} and {:?}", between.0, between.1),
                ),
                Z2Verdict::OutOfClass(why) => (
                    json!({ "verdict": "out-of-class", "reason": why, "citation": "thm:gbs2" }),
                    format!("out of class: {why}"),
                ),
            };
            Ok(Report::new(results, vec![text], &["thm:gbs2"]))
        }
        Rank2Cmd::Body => {
            let g = z2_input(cli)?;
            let b = vertical_body_glider(&g).map_err(domain)?;
            let shift = body_shift(&g).map_err(domain)?;
            let text = vec![match shift {
                Some(m) => format!("vertical body is irreducible over f^h with shift {m}"),
                None => "vertical body is not irreducible".into(),
            }];
            Ok(Report::new(json!({ "body": glider_value(&b), "shift": shift, "citation": "thm:gbs2" }), text, &["thm:gbs2"]))
        }
        Rank2Cmd::Residue => {
            let g = z2_input(cli)?;
            let (j, _) = g.window();
            let mut rows = vec![];
            let mut text = vec![];
            for s in 0..=j {
                let r = residue_glider(&g, s).map_err(domain)?;
                let v = classify(&r);
                let el = v.element().map(element_json);
                text.push(match v.element() {
                    Some(e) => format!("column {s}: residue glider irreducible, {e}"),
                    None => format!("column {s}: residue glider not irreducible"),
                });
                rows.push(json!({ "column": s, "glider": glider_value(&r), "element": el }));
            }
            Ok(Report::new(json!({ "residues": rows, "citation": "thm:gbs2" }), text, &["thm:gbs2"]))
        }
    }
}

fn selftest() -> Report {
    let seed = suite::seed_from_env();
    let mut all = suite::lattice_suites(seed, 500);
    all.push(suite::suite_self_subglider(seed, 100));
    // a fixed smoke check of the realize/classify loop on the 5-adic M_2
    let f = suite::m2_filtration();
    let mut rt = 0;
    for (a, b) in [(1, 0), (0, 1), (1, 1)] {
        let p = BsPoint::new(vec![gbs::arith::Field::Q.int(a), gbs::arith::Field::Q.int(b)]).unwrap();
        for n in -2..=2 {
            rt += usize::from(classify(&realize_csa(f.clone(), &p, n)).element() == Some(&GbsElement::csa(p.clone(), n)));
        }
    }
    let ok = all.iter().all(|s| s.passed()) && rt == 15;
    let mut text = vec![format!("seed {seed}")];
    for s in &all {
        let st = if s.passed() { "PASS" } else { "FAIL" };
        text.push(format!("{st} {} ({} cases, {} failures)", s.name, s.cases, s.failures));
        if let Some(f) = &s.first_failure {
            text.push(format!("  first failure: {f}"));
        }
    }
    text.push(format!("{} realize/classify round trip (15 cases, {} agree)", if rt == 15 { "PASS" } else { "FAIL" }, rt));
    let suites: Vec<Value> = all
        .iter()
        .map(|s| json!({ "name": s.name, "cases": s.cases, "failures": s.failures, "firstFailure": s.first_failure }))
        .collect();
    let results = json!({ "seed": seed, "suites": suites, "roundTrip": { "cases": 15, "agree": rt } });
    let mut r = Report::new(results, text, &["def:triviality", "prop:relativecsa"]);
    r.ok = ok;
    r
}

fn command_name(c: &Cmd) -> String {
    match c {
        Cmd::FieldEnum => "field-enum".into(),
        Cmd::CsaEnum => "csa-enum".into(),
        Cmd::Classify => "classify".into(),
        Cmd::Subglider => "subglider".into(),
        Cmd::StrongCheck => "strong-check".into(),
        Cmd::Estep => "estep".into(),
        Cmd::AssocStrong => "assoc-strong".into(),
        Cmd::MaxorderCheck => "maxorder-check".into(),
        Cmd::CeilTable => "ceil-table".into(),
        Cmd::TensorMap => "tensor-map".into(),
        Cmd::Brandt(b) => format!("brandt {}", match b {
            BrandtCmd::Mul => "mul",
            BrandtCmd::Inv => "inv",
            BrandtCmd::Unit => "unit",
            BrandtCmd::Verify => "verify",
        }),
        Cmd::Rank2(r) => format!("rank2 {}", match r {
            Rank2Cmd::Classify => "classify",
            Rank2Cmd::Body => "body",
            Rank2Cmd::Residue => "residue",
        }),
        Cmd::Selftest => "selftest".into(),
    }
}

/// Print to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.cmd);
    match run(&cli) {
        Ok(r) => {
            match cli.output {
                Output::Json => {
                    let mut cites = r.citations.clone();
                    cites.sort();
                    cites.dedup();
                    let doc = json!({
                        "schema": SCHEMA,
                        "command": name,
                        "ok": r.ok,
                        "results": r.results,
                        "citations": cites,
                    });
                    emit(&serde_json::to_string_pretty(&doc).unwrap());
                }
                Output::Text => emit(&r.text.join("\n")),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("gbs {name}: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            if cli.output == Output::Json {
                let doc = json!({ "schema": SCHEMA, "command": name, "ok": false, "error": m });
                emit(&serde_json::to_string_pretty(&doc).unwrap());
            }
            eprintln!("gbs {name}: {m}");
            ExitCode::from(1)
        }
    }
}
