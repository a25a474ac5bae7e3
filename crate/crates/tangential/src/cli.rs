//! Command-line front end. Every subcommand maps 1:1 to a library
//! operation; reports embed the tool version and the full resolved run
//! configuration so they are self-describing artifacts. Exit codes:
//! 0 success, 1 domain error (with a machine-readable error kind),
//! 2 usage error.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::deform::{
    construct_ttu, decide_smoothable, find_smoothing, obstruction_certificate,
    tangent_intersection_experiment, verify_weierstrass_counterexample, SmoothableDecision,
};
use crate::error::{Error, Result};
use crate::jacobian::jacobian_piece;
use crate::linalg::DenseMatrix;
use crate::orbit::{
    binary_roots, is_equivalent_fp, lin_group_binary, pencil_scan_fp, triviality_scan_fp,
    EquivalenceMode, MatrixMode, PencilReport, TrivialityScan,
};
use crate::poly::{parse_poly, HomPoly, ProjPoint};
use crate::scalar::{FieldDescriptor, Scalar};
use crate::smoothness::{is_smooth, singular_points_scan};

/// Resolved per-invocation configuration, echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub field: String,
    pub nvars: usize,
    pub seed: u64,
    pub budget: u64,
    pub output: String,
    pub enum_cap: u64,
}

#[derive(Parser)]
#[command(
    name = "tangential",
    version,
    about = "Exact computer algebra for Jacobian ideals and tangential deformations of projective hypersurfaces"
)]
struct Cli {
    /// Coefficient field: `q` for the rationals or `fp:P` for F_P
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Number of variables n+1 (polynomials live in x0..x{nvars-1})
    #[arg(long, global = true, default_value_t = 3)]
    nvars: usize,
    /// Seed for all randomized searches (echoed into the report)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Trial budget for randomized searches
    #[arg(long, global = true, default_value_t = 200)]
    budget: u64,
    /// Report format
    #[arg(long, global = true, default_value = "human", value_parser = ["human", "json"])]
    output: String,
    /// Cap on brute-force form enumerations (divisor and pencil scans)
    #[arg(long, global = true, default_value_t = 1_000_000)]
    enum_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polynomial and echo its canonical form
    Parse { poly: String },
    /// Decide smoothness of the hypersurface f = 0
    Smooth { poly: String },
    /// Scan for rational singular points (exhaustive over F_p)
    Singular {
        poly: String,
        /// Candidate points over Q, e.g. "(0:0:1);(1:1:1)"
        #[arg(long)]
        points: Option<String>,
    },
    /// Multiplicity of f at a projective point
    Multiplicity {
        poly: String,
        #[arg(long)]
        point: String,
    },
    /// Dimension and basis of the Jacobian piece J_{f,d}
    Jacobian { poly: String },
    /// Decide h in J_{f,d} and print a coefficient matrix witness
    Member { f: String, h: String },
    /// Decide tangential smoothability from the singular point list
    Smoothable {
        f: String,
        #[arg(long)]
        points: Option<String>,
    },
    /// Randomized search for a smoothing deformation with certificate
    SmoothSearch { f: String },
    /// Obstruction certificate at a point of multiplicity >= 3
    Obstruct {
        f: String,
        #[arg(long)]
        point: String,
    },
    /// Verify the product construction of a totally tangentially unstable polynomial
    ConstructTtu { p1: String, p2: String },
    /// Verify the Weierstrass cubic counterexample at (a, b) with parameter t
    Weierstrass {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        t: String,
    },
    /// Exhaustive projective equivalence test over a small prime field
    Equiv {
        f: String,
        g: String,
        /// Allow f o A = lambda * g instead of exact equality
        #[arg(long)]
        projective: bool,
    },
    /// Scan tangential triviality of candidate deformations over F_p
    TrivialityScan {
        f: String,
        /// Candidate deformations, semicolon-separated (default: basis of J_{f,d})
        #[arg(long)]
        candidates: Option<String>,
        /// Range over all matrices instead of GL only
        #[arg(long)]
        all_matrices: bool,
        /// Allow witnesses up to scalar
        #[arg(long)]
        projective: bool,
    },
    /// Classify all fibers of the pencil spanned by f and g over F_p
    PencilScan { f: String, g: String },
    /// Group of projective-line automorphisms preserving the roots of a binary form
    LinGroup { f: String },
    /// Intersect Jacobian pieces of nearby perturbations of a smooth form
    IntersectExperiment {
        f: String,
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
}

struct Context {
    field: FieldDescriptor,
    config: RunConfig,
}

impl Context {
    fn poly(&self, text: &str) -> Result<HomPoly> {
        parse_poly(text, self.config.nvars, self.field)
    }

    fn point(&self, text: &str) -> Result<ProjPoint> {
        ProjPoint::parse(text, self.field)
    }

    fn points(&self, text: &Option<String>) -> Result<Vec<ProjPoint>> {
        match text {
            None => Ok(Vec::new()),
            Some(t) => t
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| self.point(s))
                .collect(),
        }
    }

    fn scalar(&self, text: &str) -> Result<Scalar> {
        Scalar::parse(text, self.field)
    }
}

fn matrix_json(m: &DenseMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|s| Value::String(s.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn points_json(points: &[(ProjPoint, u32)]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|(p, m)| json!({ "point": p.to_string(), "multiplicity": m }))
            .collect(),
    )
}

fn triviality_json(scan: &TrivialityScan) -> Value {
    json!({
        "f": scan.f.to_string(),
        "matrix_mode": match scan.matrix_mode {
            MatrixMode::InvertibleOnly => "invertible-only",
            MatrixMode::AllMatrices => "all-matrices",
        },
        "equivalence_mode": match scan.eq_mode {
            EquivalenceMode::Strict => "strict",
            EquivalenceMode::Projective => "projective",
        },
        "candidates": scan.tested.iter().map(|c| json!({
            "h": c.h.to_string(),
            "passes": c.passes,
            "fibers": c.fibers.iter().map(|fb| json!({
                "t": fb.t.to_string(),
                "degenerate": fb.degenerate,
                "witness": fb.witness.as_ref().map(|w| json!({
                    "matrix": matrix_json(&w.matrix),
                    "lambda": w.lambda.to_string(),
                })),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn pencil_json(report: &PencilReport) -> Value {
    json!({
        "f": report.f.to_string(),
        "g": report.g.to_string(),
        "fibers": report.fibers.iter().map(|fb| json!({
            "lambda": fb.lambda.to_string(),
            "mu": fb.mu.to_string(),
            "fiber": fb.fiber.to_string(),
            "reducible": fb.reducible,
            "factor_witness": fb.factor_witness.as_ref().map(|w| w.to_string()),
        })).collect::<Vec<_>>(),
        "reducible_count": report.reducible_count,
        "generic_irreducible": report.generic_irreducible,
        "reducible_bound": report.reducible_bound,
        "bound_holds": report.bound_holds,
    })
}

fn execute(cmd: &Command, ctx: &Context) -> Result<Value> {
    match cmd {
        Command::Parse { poly } => {
            let f = ctx.poly(poly)?;
            Ok(json!({
                "canonical": f.to_string(),
                "degree": f.degree(),
                "nvars": f.nvars(),
                "terms": f.num_terms(),
            }))
        }
        Command::Smooth { poly } => {
            let f = ctx.poly(poly)?;
            Ok(json!({ "smooth": is_smooth(&f)? }))
        }
        Command::Singular { poly, points } => {
            let f = ctx.poly(poly)?;
            let candidates = ctx.points(points)?;
            let report = singular_points_scan(&f, &candidates)?;
            Ok(json!({
                "smooth": report.smooth,
                "ideal_dimension": report.ideal_dimension,
                "exhaustive_over": report.exhaustive_over.map(|f| f.to_string()),
                "singular_points": points_json(&report.rational_singular_points),
            }))
        }
        Command::Multiplicity { poly, point } => {
            let f = ctx.poly(poly)?;
            let p = ctx.point(point)?;
            Ok(json!({
                "point": p.to_string(),
                "multiplicity": f.multiplicity_at(&p)?,
            }))
        }
        Command::Jacobian { poly } => {
            let f = ctx.poly(poly)?;
            let piece = jacobian_piece(&f)?;
            Ok(json!({
                "dimension": piece.dimension(),
                "ambient_dimension": piece.monomials().len(),
                "generators": piece.generators().iter().map(|(b, g, p)| json!({
                    "beta": b,
                    "gamma": g,
                    "poly": p.to_string(),
                })).collect::<Vec<_>>(),
                "basis": piece.basis_polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Member { f, h } => {
            let f = ctx.poly(f)?;
            let h = ctx.poly(h)?;
            let piece = jacobian_piece(&f)?;
            match piece.membership(&h)? {
                Some(a) => Ok(json!({
                    "member": true,
                    "coeff_matrix": matrix_json(a.entries()),
                })),
                None => Ok(json!({ "member": false })),
            }
        }
        Command::Smoothable { f, points } => {
            let f = ctx.poly(f)?;
            let pts = ctx.points(points)?;
            let verified: Result<Vec<(ProjPoint, u32)>> = pts
                .iter()
                .map(|p| f.multiplicity_at(p).map(|m| (p.clone(), m)))
                .collect();
            let decision = decide_smoothable(&f, &pts)?;
            let decision_json = match &decision {
                SmoothableDecision::Smoothable => json!({ "decision": "Smoothable" }),
                SmoothableDecision::Obstructed(cert) => json!({
                    "decision": "Obstructed",
                    "obstruction": {
                        "point": cert.point.to_string(),
                        "multiplicity": cert.multiplicity,
                    },
                }),
                SmoothableDecision::NotApplicable(reason) => json!({
                    "decision": "NotApplicable",
                    "reason": reason,
                }),
            };
            let mut out = decision_json;
            out["points"] = points_json(&verified?);
            Ok(out)
        }
        Command::SmoothSearch { f } => {
            let f = ctx.poly(f)?;
            match find_smoothing(&f, ctx.config.budget, ctx.config.seed)? {
                Some(cert) => Ok(json!({
                    "found": true,
                    "h": cert.h.to_string(),
                    "coeff_matrix": matrix_json(cert.coeffs.entries()),
                    "smoothed": cert.f.add(&cert.h)?.to_string(),
                    "verified_smooth": cert.verified_smooth,
                    "trials_used": cert.trials_used,
                    "seed": cert.seed,
                })),
                None => Ok(json!({
                    "found": false,
                    "trials_used": ctx.config.budget,
                    "seed": ctx.config.seed,
                })),
            }
        }
        Command::Obstruct { f, point } => {
            let f = ctx.poly(f)?;
            let p = ctx.point(point)?;
            let cert = obstruction_certificate(&f, &p)?;
            Ok(json!({
                "point": cert.point.to_string(),
                "multiplicity": cert.multiplicity,
                "generator_multiplicities": cert.generator_multiplicities,
            }))
        }
        Command::ConstructTtu { p1, p2 } => {
            let p1 = ctx.poly(p1)?;
            let p2 = ctx.poly(p2)?;
            let c = construct_ttu(&p1, &p2)?;
            let r = &c.hypothesis_report;
            Ok(json!({
                "f": c.f.to_string(),
                "d1": c.d1,
                "d2": c.d2,
                "certified": c.certified,
                "hypotheses": {
                    "p1_smooth": r.p1_smooth,
                    "p2_smooth": r.p2_smooth,
                    "d1_ge_3": r.d1_ge_3,
                    "d2_ge_3": r.d2_ge_3,
                    "degrees_distinct": r.degrees_distinct,
                    "total_ge_7": r.total_ge_7,
                    "rank_full_p1": r.rank_full_p1,
                    "rank_full_p2": r.rank_full_p2,
                },
            }))
        }
        Command::Weierstrass { a, b, t } => {
            let a = ctx.scalar(a)?;
            let b = ctx.scalar(b)?;
            let t = ctx.scalar(t)?;
            let report = verify_weierstrass_counterexample(&a, &b, &t)?;
            Ok(json!({
                "f": report.f.to_string(),
                "h": report.h.to_string(),
                "sqrt_one_plus_t": report.sqrt_one_plus_t.to_string(),
                "membership": report.membership.is_some(),
                "substitution_check": report.substitution_matches,
                "independent_of_f": report.independent_of_f,
                "all_checks_pass": report.all_checks_pass(),
            }))
        }
        Command::Equiv { f, g, projective } => {
            let f = ctx.poly(f)?;
            let g = ctx.poly(g)?;
            let mode = if *projective {
                EquivalenceMode::Projective
            } else {
                EquivalenceMode::Strict
            };
            match is_equivalent_fp(&f, &g, mode)? {
                Some(w) => Ok(json!({
                    "equivalent": true,
                    "matrix": matrix_json(&w.matrix),
                    "lambda": w.lambda.to_string(),
                })),
                None => Ok(json!({ "equivalent": false })),
            }
        }
        Command::TrivialityScan {
            f,
            candidates,
            all_matrices,
            projective,
        } => {
            let f = ctx.poly(f)?;
            let candidates: Vec<HomPoly> = match candidates {
                None => Vec::new(),
                Some(t) => t
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| ctx.poly(s))
                    .collect::<Result<_>>()?,
            };
            let scan = triviality_scan_fp(
                &f,
                &candidates,
                if *all_matrices {
                    MatrixMode::AllMatrices
                } else {
                    MatrixMode::InvertibleOnly
                },
                if *projective {
                    EquivalenceMode::Projective
                } else {
                    EquivalenceMode::Strict
                },
            )?;
            Ok(triviality_json(&scan))
        }
        Command::PencilScan { f, g } => {
            let f = ctx.poly(f)?;
            let g = ctx.poly(g)?;
            Ok(pencil_json(&pencil_scan_fp(&f, &g, ctx.config.enum_cap)?))
        }
        Command::LinGroup { f } => {
            let f = ctx.poly(f)?;
            let roots = binary_roots(&f)?.ok_or_else(|| {
                Error::InvalidArgument(
                    "binary form does not split over the base field".into(),
                )
            })?;
            let group = lin_group_binary(&roots)?;
            Ok(json!({
                "roots": points_json(&roots),
                "order": group.len(),
                "maps": group.iter().map(|m| matrix_json(m.matrix())).collect::<Vec<_>>(),
            }))
        }
        Command::IntersectExperiment { f, count } => {
            let f = ctx.poly(f)?;
            let dims = tangent_intersection_experiment(&f, *count, ctx.config.seed)?;
            let non_increasing = dims.windows(2).all(|w| w[1] <= w[0]);
            Ok(json!({
                "count": count,
                "seed": ctx.config.seed,
                "dimensions": dims,
                "final_dimension": dims.last(),
                "non_increasing": non_increasing,
            }))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Parse { .. } => "parse",
        Command::Smooth { .. } => "smooth",
        Command::Singular { .. } => "singular",
        Command::Multiplicity { .. } => "multiplicity",
        Command::Jacobian { .. } => "jacobian",
        Command::Member { .. } => "member",
        Command::Smoothable { .. } => "smoothable",
        Command::SmoothSearch { .. } => "smooth-search",
        Command::Obstruct { .. } => "obstruct",
        Command::ConstructTtu { .. } => "construct-ttu",
        Command::Weierstrass { .. } => "weierstrass",
        Command::Equiv { .. } => "equiv",
        Command::TrivialityScan { .. } => "triviality-scan",
        Command::PencilScan { .. } => "pencil-scan",
        Command::LinGroup { .. } => "lin-group",
        Command::IntersectExperiment { .. } => "intersect-experiment",
    }
}

fn render_human(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_human(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(v))),
                }
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !matches!(v, Value::Object(_) | Value::Array(_))) {
                let inline: Vec<String> = items.iter().map(scalar_text).collect();
                out.push_str(&format!("{pad}[{}]\n", inline.join(", ")));
            } else {
                for (i, v) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    render_human(v, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn emit(config: &RunConfig, command: &str, body: std::result::Result<Value, Error>) -> (String, i32) {
    let (result, exit) = match body {
        Ok(v) => (v, 0),
        Err(e) => (
            json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
            1,
        ),
    };
    let report = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": {
            "field": config.field,
            "nvars": config.nvars,
            "seed": config.seed,
            "budget": config.budget,
            "output": config.output,
            "enum_cap": config.enum_cap,
        },
        "result": result,
    });
    let text = match config.output.as_str() {
        "json" => serde_json::to_string_pretty(&report).expect("report serializes"),
        _ => {
            let mut out = String::new();
            render_human(&report, 0, &mut out);
            out.trim_end().to_string()
        }
    };
    (text, exit)
}

/// Parses argv, runs the subcommand and prints the report. Returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage problems exit 2
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = RunConfig {
        field: cli.field.clone(),
        nvars: cli.nvars,
        seed: cli.seed,
        budget: cli.budget,
        output: cli.output.clone(),
        enum_cap: cli.enum_cap,
    };
    let name = command_name(&cli.command);
    let body = cli
        .field
        .parse::<FieldDescriptor>()
        .and_then(|field| execute(&cli.command, &Context { field, config: config.clone() }));
    let (text, exit) = emit(&config, name, body);
    println!("{text}");
    exit
}
