//! Command dispatcher: one command per laboratory construction.

use clap::{Parser, Subcommand};
use serde_json::json;

use oal_core::algebra::{self, SatisfactionVerdict};
use oal_core::colimit::{self, SiftedVerdict, SplitVerdict};
use oal_core::free::{self, FreeStatus};
use oal_core::hsp::{self, HspConfig, HspVerdict};
use oal_core::poset::{self, MonotoneMap};
use oal_core::saturate::{derivable, Goal, Provability};
use oal_core::term::{parse_term, Inequation};
use oal_core::theory::{self, RetractVerdict};
use oal_core::verify::{self, CoinserterVerdict};

use crate::report::*;
use crate::workspace::Workspace;

#[derive(Parser, Debug)]
#[command(
    name = "oal",
    about = "Finite laboratory for varieties of ordered algebras",
    disable_help_flag = false
)]
pub struct Cli {
    /// Workspace file(s) to load, in order.
    #[arg(short = 'f', long = "file", global = true)]
    pub files: Vec<String>,

    /// Term depth bound for saturation and free algebras.
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: usize,

    /// Maximal arity materialized in theories / retract searches.
    #[arg(long = "max-arity", global = true, default_value_t = 3)]
    pub max_arity: usize,

    /// Probe bound for universal-property verification (enables it).
    #[arg(long, global = true)]
    pub probe: Option<usize>,

    /// Emit the report as a JSON document.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Cap on term-universe size.
    #[arg(long = "term-cap", global = true, default_value_t = 100_000)]
    pub term_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load and validate the workspace.
    Check,
    /// Free algebra of a presentation on a poset of generators.
    Free { pres: String, poset: String },
    /// Bounded derivability of `LHS <= RHS` (or `LHS = RHS`, both ways).
    Prove {
        pres: String,
        goal: String,
        /// Interpret free identifiers as elements of this generator poset.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Does the algebra satisfy every axiom of the presentation?
    Sat { alg: String, pres: String },
    /// Discrete Lawvere theory of a presentation up to the maximal arity.
    Theory { pres: String },
    /// Model of an algebra over the theory of a presentation.
    Model { alg: String, pres: String },
    /// Algebra -> model -> algebra round trip, compared up to isomorphism.
    Roundtrip { alg: String, pres: String },
    /// Coinserter of a parallel pair of maps (verified when --probe is set).
    Coinserter { u0: String, u1: String },
    /// Prekernel pair of a map (or of a homomorphism).
    Prekernel { f: String },
    /// (surjection, embedding) factorization of a map or homomorphism.
    Factor { f: String },
    /// Conical coequalizer of two parallel maps via the symmetrized pair.
    Coeq { f: String, g: String },
    /// Split-coequalizer identities; s is derived when omitted.
    Split {
        d0: String,
        d1: String,
        e: String,
        t: String,
        s: Option<String>,
    },
    /// Canonical presentation of an algebra as a split coequalizer of frees.
    Canonical { alg: String, pres: String },
    /// Commutation of two coinserters with the binary product.
    Sifted {
        u0: String,
        u1: String,
        v0: String,
        v1: String,
    },
    /// Retract-of-finite-free search (perfect presentability).
    Retract { alg: String, pres: String },
    /// Birkhoff-closure membership of an algebra among generators.
    Closure {
        b: String,
        gens: Vec<String>,
        /// Bound on the number of product factors.
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
}

struct Ctx<'a> {
    ws: &'a Workspace,
    echo: Vec<String>,
    depth: usize,
    max_arity: usize,
    probe: Option<usize>,
    term_cap: usize,
}

fn usage(echo: &[String], msg: impl Into<String>) -> Report {
    let mut r = Report::new(echo, "error", EXIT_USAGE);
    r.line(format!("error: {}", msg.into()));
    r.data = json!({ "error": r.lines.last().unwrap() });
    r
}

macro_rules! lookup {
    ($ctx:expr, $kind:ident, $name:expr) => {
        match $ctx.ws.$kind($name) {
            Some(e) => e,
            None => {
                return usage(
                    &$ctx.echo,
                    format!("unknown {} `{}`", stringify!($kind), $name),
                )
            }
        }
    };
}

/// Runs one command against a loaded workspace.
pub fn run_command(ws: &Workspace, cli: &Cli) -> Report {
    let echo: Vec<String> = command_echo(&cli.command);
    let ctx = Ctx {
        ws,
        echo,
        depth: cli.depth,
        max_arity: cli.max_arity,
        probe: cli.probe,
        term_cap: cli.term_cap,
    };
    let started = std::time::Instant::now();
    let mut report = dispatch(&ctx, cli);
    report.timing_ms = started.elapsed().as_millis();
    report
}

fn command_echo(cmd: &Command) -> Vec<String> {
    match cmd {
        Command::Check => vec!["check".into()],
        Command::Free { pres, poset } => vec!["free".into(), pres.clone(), poset.clone()],
        Command::Prove { pres, goal, gens } => {
            let mut v = vec!["prove".into(), pres.clone(), goal.clone()];
            if let Some(g) = gens {
                v.push(format!("--gens {g}"));
            }
            v
        }
        Command::Sat { alg, pres } => vec!["sat".into(), alg.clone(), pres.clone()],
        Command::Theory { pres } => vec!["theory".into(), pres.clone()],
        Command::Model { alg, pres } => vec!["model".into(), alg.clone(), pres.clone()],
        Command::Roundtrip { alg, pres } => {
            vec!["roundtrip".into(), alg.clone(), pres.clone()]
        }
        Command::Coinserter { u0, u1 } => vec!["coinserter".into(), u0.clone(), u1.clone()],
        Command::Prekernel { f } => vec!["prekernel".into(), f.clone()],
        Command::Factor { f } => vec!["factor".into(), f.clone()],
        Command::Coeq { f, g } => vec!["coeq".into(), f.clone(), g.clone()],
        Command::Split { d0, d1, e, t, s } => {
            let mut v = vec![
                "split".into(),
                d0.clone(),
                d1.clone(),
                e.clone(),
                t.clone(),
            ];
            if let Some(s) = s {
                v.push(s.clone());
            }
            v
        }
        Command::Canonical { alg, pres } => {
            vec!["canonical".into(), alg.clone(), pres.clone()]
        }
        Command::Sifted { u0, u1, v0, v1 } => vec![
            "sifted".into(),
            u0.clone(),
            u1.clone(),
            v0.clone(),
            v1.clone(),
        ],
        Command::Retract { alg, pres } => vec!["retract".into(), alg.clone(), pres.clone()],
        Command::Closure { b, gens, power } => {
            let mut v = vec!["closure".into(), b.clone()];
            v.extend(gens.iter().cloned());
            v.push(format!("--power {power}"));
            v
        }
    }
}

fn dispatch(ctx: &Ctx, cli: &Cli) -> Report {
    match &cli.command {
        Command::Check => check(ctx),
        Command::Free { pres, poset } => free_cmd(ctx, pres, poset),
        Command::Prove { pres, goal, gens } => prove(ctx, pres, goal, gens.as_deref()),
        Command::Sat { alg, pres } => sat(ctx, alg, pres),
        Command::Theory { pres } => theory_cmd(ctx, pres),
        Command::Model { alg, pres } => model_cmd(ctx, alg, pres),
        Command::Roundtrip { alg, pres } => roundtrip(ctx, alg, pres),
        Command::Coinserter { u0, u1 } => coinserter_cmd(ctx, u0, u1),
        Command::Prekernel { f } => prekernel_cmd(ctx, f),
        Command::Factor { f } => factor_cmd(ctx, f),
        Command::Coeq { f, g } => coeq_cmd(ctx, f, g),
        Command::Split { d0, d1, e, t, s } => split_cmd(ctx, d0, d1, e, t, s.as_deref()),
        Command::Canonical { alg, pres } => canonical_cmd(ctx, alg, pres),
        Command::Sifted { u0, u1, v0, v1 } => sifted_cmd(ctx, u0, u1, v0, v1),
        Command::Retract { alg, pres } => retract_cmd(ctx, alg, pres),
        Command::Closure { b, gens, power } => closure_cmd(ctx, b, gens, *power),
    }
}

fn check(ctx: &Ctx) -> Report {
    let mut r = Report::new(&ctx.echo, "ok", EXIT_OK);
    r.line(format!(
        "{} signatures, {} posets, {} presentations, {} algebras, {} maps, {} homs",
        ctx.ws.signatures.len(),
        ctx.ws.posets.len(),
        ctx.ws.presentations.len(),
        ctx.ws.algebras.len(),
        ctx.ws.maps.len(),
        ctx.ws.homs.len()
    ));
    r.data = json!({
        "signatures": ctx.ws.signatures.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
        "posets": ctx.ws.posets.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
        "presentations": ctx.ws.presentations.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
        "algebras": ctx.ws.algebras.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
        "maps": ctx.ws.maps.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
        "homs": ctx.ws.homs.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
    });
    r
}

fn free_cmd(ctx: &Ctx, pres: &str, poset: &str) -> Report {
    let pres = lookup!(ctx, presentation, pres);
    let poset = lookup!(ctx, poset, poset);
    match free::free_algebra(&pres.pres, &poset.poset, ctx.depth, ctx.term_cap) {
        Ok(f) => {
            let (verdict, exit) = match f.status() {
                FreeStatus::Total => ("total".to_string(), EXIT_OK),
                FreeStatus::Truncated(d) => (format!("truncated at depth {d}"), EXIT_INCONCLUSIVE),
            };
            let mut r = Report::new(&ctx.echo, verdict, exit);
            r.line(format!("classes: {}", f.class_count()));
            for l in poset_lines("  ", f.classes()) {
                r.line(l);
            }
            r.data = json!({
                "status": match f.status() {
                    FreeStatus::Total => "total".to_string(),
                    FreeStatus::Truncated(d) => format!("truncated({d})"),
                },
                "classes": poset_json(f.classes()),
                "unit": map_json(f.unit()),
            });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}

fn prove(ctx: &Ctx, pres_name: &str, goal_src: &str, gens: Option<&str>) -> Report {
    let pres = lookup!(ctx, presentation, pres_name);
    let (relation, lhs_src, rhs_src) = match split_goal(goal_src) {
        Some(parts) => parts,
        None => return usage(&ctx.echo, "goal must be `LHS <= RHS` or `LHS = RHS`"),
    };
    let gen_poset = match gens {
        Some(g) => Some(lookup!(ctx, poset, g).poset.clone()),
        None => None,
    };
    // Identifiers resolve as generators when --gens is given, otherwise as
    // context variables (Skolemized by the engine).
    let allowed: Vec<String> = match &gen_poset {
        Some(p) => p.labels().to_vec(),
        None => collect_identifiers(&[&lhs_src, &rhs_src], &pres.pres),
    };
    let lhs = match parse_term(&lhs_src, pres.pres.signature(), &allowed) {
        Ok(t) => t,
        Err(e) => return usage(&ctx.echo, e.to_string()),
    };
    let rhs = match parse_term(&rhs_src, pres.pres.signature(), &allowed) {
        Ok(t) => t,
        Err(e) => return usage(&ctx.echo, e.to_string()),
    };
    let goals: Vec<(oal_core::term::Term, oal_core::term::Term)> = if relation == "=" {
        vec![(lhs.clone(), rhs.clone()), (rhs, lhs)]
    } else {
        vec![(lhs, rhs)]
    };
    let mut certificates = Vec::new();
    for (l, r) in goals {
        let goal = match &gen_poset {
            Some(p) => Goal::Ground {
                generators: p.clone(),
                lhs: l.clone(),
                rhs: r.clone(),
            },
            None => Goal::Inequation(Inequation {
                context: allowed.clone(),
                lhs: l.clone(),
                rhs: r.clone(),
            }),
        };
        match derivable(&pres.pres, &goal, ctx.depth, ctx.term_cap) {
            Ok(Provability::Proven(cert)) => certificates.push(cert),
            Ok(Provability::Inconclusive) => {
                let mut rep = Report::new(&ctx.echo, "inconclusive", EXIT_INCONCLUSIVE);
                rep.line(format!("not derived at depth {}: {} <= {}", ctx.depth, l, r));
                rep.data = json!({ "inconclusive": format!("{l} <= {r}") });
                return rep;
            }
            Err(e) => return usage(&ctx.echo, e.to_string()),
        }
    }
    let mut rep = Report::new(&ctx.echo, "proven", EXIT_OK);
    for cert in &certificates {
        for line in cert.to_string().lines() {
            rep.line(format!("  {line}"));
        }
    }
    rep.data = json!({
        "certificates": certificates
            .iter()
            .map(|c| json!({
                "steps": c.steps.len(),
                "conclusion": format!("{} <= {}", c.conclusion.0, c.conclusion.1),
                "rendered": c.to_string(),
            }))
            .collect::<Vec<_>>(),
    });
    rep
}

fn split_goal(goal: &str) -> Option<(&'static str, String, String)> {
    if let Some((l, r)) = goal.split_once("<=") {
        return Some(("<=", l.trim().to_string(), r.trim().to_string()));
    }
    if let Some((l, r)) = goal.split_once('=') {
        return Some(("=", l.trim().to_string(), r.trim().to_string()));
    }
    None
}

/// Free identifiers of the goal terms (future Skolem constants), in order of
/// first appearance.
fn collect_identifiers(sources: &[&str], pres: &oal_core::term::Presentation) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for src in sources {
        let mut cur = String::new();
        for c in src.chars().chain(Some(' ')) {
            if c.is_ascii_alphanumeric() || c == '_' {
                cur.push(c);
            } else if !cur.is_empty() {
                let ident = std::mem::take(&mut cur);
                if ident.chars().next().is_some_and(|c| !c.is_ascii_digit())
                    && pres.signature().op_index(&ident).is_none()
                    && !out.contains(&ident)
                {
                    out.push(ident);
                }
            }
        }
    }
    out
}

fn sat(ctx: &Ctx, alg: &str, pres: &str) -> Report {
    let alg = lookup!(ctx, algebra, alg);
    let pres = lookup!(ctx, presentation, pres);
    if alg.alg.signature() != pres.pres.signature() {
        return usage(&ctx.echo, "algebra and presentation signatures differ");
    }
    for ax in pres.pres.axioms() {
        match algebra::satisfies(&alg.alg, ax) {
            Ok(SatisfactionVerdict::Holds) => {}
            Ok(SatisfactionVerdict::Fails(val)) => {
                let mut r = Report::new(&ctx.echo, "fails", EXIT_NEGATIVE);
                let rendered: Vec<String> =
                    val.iter()
                        .map(|(v, &e)| format!("{v}->{}", alg.alg.carrier().label(e)))
                        .collect();
                r.line(format!("axiom violated: {ax}"));
                r.line(format!("countervaluation: {}", rendered.join(", ")));
                r.data = json!({
                    "axiom": ax.to_string(),
                    "countervaluation": rendered,
                });
                return r;
            }
            Err(e) => return usage(&ctx.echo, e.to_string()),
        }
    }
    let mut r = Report::new(&ctx.echo, "holds", EXIT_OK);
    r.line(format!("all {} axioms hold", pres.pres.axioms().len()));
    r.data = json!({ "axioms": pres.pres.axioms().len() });
    r
}

fn theory_cmd(ctx: &Ctx, pres: &str) -> Report {
    let pres = lookup!(ctx, presentation, pres);
    match theory::theory_of(&pres.pres, ctx.max_arity, ctx.depth, ctx.term_cap) {
        Ok(t) => {
            let mut r = Report::new(&ctx.echo, "total", EXIT_OK);
            for n in 0..=t.max_arity() {
                r.line(format!("T({n},1): {} classes", t.hom_size(n)));
            }
            r.data = json!({
                "max_arity": t.max_arity(),
                "hom_posets": (0..=t.max_arity())
                    .map(|n| poset_json(t.hom(n).classes()))
                    .collect::<Vec<_>>(),
            });
            r
        }
        Err(theory::TheoryError::Truncated(n)) => {
            let mut r = Report::new(&ctx.echo, "truncated", EXIT_INCONCLUSIVE);
            r.line(format!("free algebra on discrete {n} did not stabilize"));
            r.data = json!({ "truncated_at_arity": n });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}

fn theory_for(ctx: &Ctx, pres: &oal_core::term::Presentation) -> Result<theory::DiscreteLawvereTheory, Report> {
    theory::theory_of(pres, ctx.max_arity, ctx.depth, ctx.term_cap).map_err(|e| match e {
        theory::TheoryError::Truncated(n) => {
            let mut r = Report::new(&ctx.echo, "truncated", EXIT_INCONCLUSIVE);
            r.line(format!("free algebra on discrete {n} did not stabilize"));
            r.data = json!({ "truncated_at_arity": n });
            r
        }
        other => usage(&ctx.echo, other.to_string()),
    })
}

fn model_cmd(ctx: &Ctx, alg: &str, pres: &str) -> Report {
    let alg = lookup!(ctx, algebra, alg);
    let pres = lookup!(ctx, presentation, pres);
    let t = match theory_for(ctx, &pres.pres) {
        Ok(t) => t,
        Err(r) => return r,
    };
    match theory::model_of_algebra(&alg.alg, &t) {
        Ok(m) => {
            let mut r = Report::new(&ctx.echo, "valid", EXIT_OK);
            for n in 0..=m.max_arity() {
                r.line(format!(
                    "arity {n}: {} actions on base^{n}",
                    t.hom_size(n)
                ));
            }
            r.data = json!({
                "base": poset_json(m.base()),
                "actions": (0..=m.max_arity())
                    .map(|n| t.hom_size(n))
                    .collect::<Vec<_>>(),
            });
            r
        }
        Err(e) => {
            let mut r = Report::new(&ctx.echo, "invalid", EXIT_NEGATIVE);
            r.line(e.to_string());
            r.data = json!({ "error": e.to_string() });
            r
        }
    }
}

fn roundtrip(ctx: &Ctx, alg: &str, pres: &str) -> Report {
    let alg = lookup!(ctx, algebra, alg);
    let pres = lookup!(ctx, presentation, pres);
    let t = match theory_for(ctx, &pres.pres) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let model = match theory::model_of_algebra(&alg.alg, &t) {
        Ok(m) => m,
        Err(e) => return usage(&ctx.echo, e.to_string()),
    };
    let back = match theory::algebra_of_model(&model, &t) {
        Ok(a) => a,
        Err(e) => return usage(&ctx.echo, e.to_string()),
    };
    if back == alg.alg {
        let mut r = Report::new(&ctx.echo, "isomorphic", EXIT_OK);
        r.line("algebra_of_model(model_of_algebra(A)) equals A".to_string());
        r.data = json!({ "equal": true });
        r
    } else {
        let mut r = Report::new(&ctx.echo, "different", EXIT_NEGATIVE);
        r.data = json!({ "equal": false });
        r
    }
}

fn coinserter_cmd(ctx: &Ctx, u0: &str, u1: &str) -> Report {
    let u0 = lookup!(ctx, map, u0);
    let u1 = lookup!(ctx, map, u1);
    let co = match poset::coinserter(&u0.map, &u1.map) {
        Ok(co) => co,
        Err(e) => return usage(&ctx.echo, e.to_string()),
    };
    let mut verdict = "constructed".to_string();
    let mut exit = EXIT_OK;
    let mut verification = json!(null);
    if let Some(bound) = ctx.probe {
        match verify::verify_coinserter(&u0.map, &u1.map, &co.map, bound) {
            CoinserterVerdict::Pass { probes, warning } => {
                verdict = format!("verified against {probes} probes");
                verification = json!({ "pass": true, "probes": probes, "warning": warning });
            }
            CoinserterVerdict::Fail(f) => {
                verdict = "verification failed".into();
                exit = EXIT_NEGATIVE;
                verification = json!({ "pass": false, "witness": format!("{f:?}") });
            }
        }
    }
    let mut r = Report::new(&ctx.echo, verdict, exit);
    for l in poset_lines("  ", &co.quotient) {
        r.line(l);
    }
    for l in map_lines("  map: ", &co.map) {
        r.line(l);
    }
    r.data = json!({
        "quotient": poset_json(&co.quotient),
        "map": map_json(&co.map),
        "verification": verification,
    });
    r
}

fn prekernel_cmd(ctx: &Ctx, f: &str) -> Report {
    if let Some(entry) = ctx.ws.map(f) {
        let (u, p0, p1) = poset::prekernel_pair(&entry.map);
        let mut r = Report::new(&ctx.echo, "constructed", EXIT_OK);
        for l in poset_lines("  ", &u) {
            r.line(l);
        }
        r.data = json!({
            "object": poset_json(&u),
            "p0": map_json(&p0),
            "p1": map_json(&p1),
        });
        return r;
    }
    if let Some(entry) = ctx.ws.hom(f) {
        let (u, p0, p1) = algebra::prekernel_pair(&entry.hom);
        let mut r = Report::new(&ctx.echo, "constructed", EXIT_OK);
        for l in poset_lines("  ", u.carrier()) {
            r.line(l);
        }
        r.data = json!({
            "object": algebra_json(&u),
            "p0": hom_json(&p0),
            "p1": hom_json(&p1),
        });
        return r;
    }
    usage(&ctx.echo, format!("unknown map or hom `{f}`"))
}

fn factor_cmd(ctx: &Ctx, f: &str) -> Report {
    if let Some(entry) = ctx.ws.map(f) {
        let (c, m) = poset::factor(&entry.map);
        let mut r = Report::new(&ctx.echo, "factored", EXIT_OK);
        for l in map_lines("  c: ", &c) {
            r.line(l);
        }
        for l in map_lines("  m: ", &m) {
            r.line(l);
        }
        r.data = json!({ "c": map_json(&c), "m": map_json(&m) });
        return r;
    }
    if let Some(entry) = ctx.ws.hom(f) {
        let (c, m) = algebra::factor(&entry.hom);
        let mut r = Report::new(&ctx.echo, "factored", EXIT_OK);
        for l in map_lines("  c: ", c.map()) {
            r.line(l);
        }
        for l in map_lines("  m: ", m.map()) {
            r.line(l);
        }
        r.data = json!({ "c": hom_json(&c), "m": hom_json(&m) });
        return r;
    }
    usage(&ctx.echo, format!("unknown map or hom `{f}`"))
}

fn coeq_cmd(ctx: &Ctx, f: &str, g: &str) -> Report {
    let f = lookup!(ctx, map, f);
    let g = lookup!(ctx, map, g);
    match colimit::coequalizer(&f.map, &g.map) {
        Ok(co) => {
            let mut r = Report::new(&ctx.echo, "constructed", EXIT_OK);
            for l in poset_lines("  ", &co.quotient) {
                r.line(l);
            }
            r.data = json!({
                "quotient": poset_json(&co.quotient),
                "map": map_json(&co.map),
            });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}

fn split_cmd(ctx: &Ctx, d0: &str, d1: &str, e: &str, t: &str, s: Option<&str>) -> Report {
    let d0 = &lookup!(ctx, map, d0).map;
    let d1 = &lookup!(ctx, map, d1).map;
    let e = &lookup!(ctx, map, e).map;
    let t = &lookup!(ctx, map, t).map;
    let s_map: Option<MonotoneMap> = match s {
        Some(name) => Some(lookup!(ctx, map, name).map.clone()),
        None => None,
    };
    match colimit::split_coequalizer(d0, d1, e, t, s_map.as_ref()) {
        Ok(SplitVerdict::Verified(data)) => {
            let mut r = Report::new(&ctx.echo, "verified", EXIT_OK);
            for l in map_lines("  s: ", &data.s) {
                r.line(l);
            }
            r.data = json!({ "verified": true, "s": map_json(&data.s) });
            r
        }
        Ok(SplitVerdict::Violation { identity, witness }) => {
            let mut r = Report::new(&ctx.echo, "violation", EXIT_NEGATIVE);
            r.line(format!("identity `{identity}` fails at element {witness}"));
            r.data = json!({ "verified": false, "identity": identity, "witness": witness });
            r
        }
        Err(err) => usage(&ctx.echo, err.to_string()),
    }
}

fn canonical_cmd(ctx: &Ctx, alg: &str, pres: &str) -> Report {
    let alg = lookup!(ctx, algebra, alg);
    let pres = lookup!(ctx, presentation, pres);
    match colimit::canonical_presentation(&alg.alg, &pres.pres, ctx.depth, ctx.term_cap) {
        Ok(cp) => match &cp.verdict {
            SplitVerdict::Verified(_) => {
                let mut r = Report::new(&ctx.echo, "verified", EXIT_OK);
                r.line(format!(
                    "FUA has {} classes, FUFUA has {} classes",
                    cp.e.dom().len(),
                    cp.d0.dom().len()
                ));
                r.data = json!({
                    "verified": true,
                    "fua": algebra_json(cp.e.dom()),
                    "fufua": algebra_json(cp.d0.dom()),
                });
                r
            }
            SplitVerdict::Violation { identity, witness } => {
                let mut r = Report::new(&ctx.echo, "violation", EXIT_NEGATIVE);
                r.line(format!("identity `{identity}` fails at element {witness}"));
                r.data = json!({ "verified": false, "identity": identity });
                r
            }
        },
        Err(colimit::ColimitError::Free(free::FreeError::Truncated(d))) => {
            let mut r = Report::new(&ctx.echo, "truncated", EXIT_INCONCLUSIVE);
            r.line(format!("free algebras did not stabilize at depth {d}"));
            r.data = json!({ "truncated": d });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}

fn sifted_cmd(ctx: &Ctx, u0: &str, u1: &str, v0: &str, v1: &str) -> Report {
    let u0 = &lookup!(ctx, map, u0).map;
    let u1 = &lookup!(ctx, map, u1).map;
    let v0 = &lookup!(ctx, map, v0).map;
    let v1 = &lookup!(ctx, map, v1).map;
    match colimit::sifted_commutation_check((u0, u1), (v0, v1)) {
        Ok(SiftedVerdict::Commutes {
            reflexive_first,
            reflexive_second,
        }) => {
            let mut r = Report::new(&ctx.echo, "commutes", EXIT_OK);
            r.line(format!(
                "reflexive: first={reflexive_first}, second={reflexive_second}"
            ));
            r.data = json!({
                "commutes": true,
                "reflexive": [reflexive_first, reflexive_second],
            });
            r
        }
        Ok(SiftedVerdict::CounterExample {
            reflexive_first,
            reflexive_second,
            product_quotient,
            quotient_product,
        }) => {
            let mut r = Report::new(&ctx.echo, "counterexample", EXIT_NEGATIVE);
            r.line(format!(
                "reflexive: first={reflexive_first}, second={reflexive_second}"
            ));
            r.line(format!(
                "colim(D1xD2) has {} elements, colim D1 x colim D2 has {}",
                product_quotient.len(),
                quotient_product.len()
            ));
            r.data = json!({
                "commutes": false,
                "reflexive": [reflexive_first, reflexive_second],
                "product_quotient": poset_json(&product_quotient),
                "quotient_product": poset_json(&quotient_product),
            });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}

fn retract_cmd(ctx: &Ctx, alg: &str, pres: &str) -> Report {
    let alg = lookup!(ctx, algebra, alg);
    let pres = lookup!(ctx, presentation, pres);
    match theory::perfectly_presentable_check(
        &alg.alg,
        &pres.pres,
        ctx.max_arity,
        ctx.depth,
        ctx.term_cap,
    ) {
        Ok(RetractVerdict::Retract {
            n,
            section,
            retraction,
        }) => {
            let mut r = Report::new(&ctx.echo, format!("retract of free on {n}"), EXIT_OK);
            for l in map_lines("  section: ", section.map()) {
                r.line(l);
            }
            for l in map_lines("  retraction: ", retraction.map()) {
                r.line(l);
            }
            r.data = json!({
                "retract": true,
                "arity": n,
                "section": hom_json(&section),
                "retraction": hom_json(&retraction),
            });
            r
        }
        Ok(RetractVerdict::NotFoundUpTo(n)) => {
            let mut r = Report::new(&ctx.echo, "not found", EXIT_INCONCLUSIVE);
            r.line(format!("no retract presentation with up to {n} generators"));
            r.data = json!({ "retract": false, "bound": n });
            r
        }
        Err(theory::TheoryError::Truncated(n)) => {
            let mut r = Report::new(&ctx.echo, "truncated", EXIT_INCONCLUSIVE);
            r.line(format!("free algebra on discrete {n} did not stabilize"));
            r.data = json!({ "truncated_at_arity": n });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}

fn closure_cmd(ctx: &Ctx, b: &str, gens: &[String], power: usize) -> Report {
    let b = lookup!(ctx, algebra, b);
    let mut gen_algs = Vec::new();
    for g in gens {
        gen_algs.push(lookup!(ctx, algebra, g).alg.clone());
    }
    let cfg = HspConfig {
        term_cap: ctx.term_cap,
        ..HspConfig::default()
    };
    match hsp::hsp_membership(&b.alg, &gen_algs, power, &cfg) {
        Ok(HspVerdict::Member(w)) => {
            let mut r = Report::new(&ctx.echo, "member", EXIT_OK);
            r.line(format!(
                "quotient of a {}-element subalgebra of a {}-fold product",
                w.subalgebra_size, w.power
            ));
            if !w.seed.is_empty() {
                r.line(format!("  generated by: {}", w.seed.join(" ")));
            }
            r.data = json!({
                "member": true,
                "power": w.power,
                "factors": w.factors,
                "seed": w.seed,
                "subalgebra_size": w.subalgebra_size,
                "quotient": hom_json(&w.quotient),
            });
            r
        }
        Ok(HspVerdict::Refuted(ineq)) => {
            let mut r = Report::new(&ctx.echo, "refuted", EXIT_NEGATIVE);
            r.line(format!("separating inequation: {ineq}"));
            r.data = json!({ "member": false, "refuted_by": ineq.to_string() });
            r
        }
        Ok(HspVerdict::NotFound) => {
            let mut r = Report::new(&ctx.echo, "not found", EXIT_INCONCLUSIVE);
            r.line("bounded search exhausted without a witness either way".to_string());
            r.data = json!({ "member": null });
            r
        }
        Err(e) => usage(&ctx.echo, e.to_string()),
    }
}
