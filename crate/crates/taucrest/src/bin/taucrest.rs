//! Command line front end: analyze a configuration, classify its modules,
//! or verify the classification statements against enumeration.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use taucrest::algebra::{dual_bimodule, product_algebra, triangular_bimodule, AlgebraPresentation, Quiver};
use taucrest::classify::{
    enumerate_pair_support_tau_tilting, enumerate_support_tau_tilting, verify_theorems,
    EnumConfig, Labeler, PairLabeler, VerifyInput,
};
use taucrest::exactmat::{FieldTag, Mat};
use taucrest::input::{resolve_input, InputError, ResolvedInput};
use taucrest::repcat::{injective_module, minimal_presentation, projective_module, simple_module};
use taucrest::taukit::is_tau_rigid;
use taucrest::trivext::{functor_t, functor_z, pair_is_tau_rigid, TrivialExtension};

#[derive(Parser)]
#[command(
    name = "taucrest",
    about = "tau-tilting toolkit for trivial extensions of quiver algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Ground field: a prime p, or Q for the rationals.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Total dimension bound for enumeration.
    #[arg(long = "max-dim", global = true)]
    max_dim: Option<usize>,
    /// Seed for the randomized isomorphism and decomposition tests.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Enumerate dimension vectors on multiple threads.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Report the algebra, bimodule and distinguished modules of a file.
    Analyze { file: PathBuf },
    /// Enumerate indecomposable, tau-rigid and support tau-tilting modules.
    Classify { file: PathBuf },
    /// Check every classification statement against enumeration.
    Verify { file: PathBuf },
    /// Run the two built-in example configurations.
    Examples,
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    if s == "Q" {
        return Ok(FieldTag::Rationals);
    }
    s.parse::<u32>()
        .map(FieldTag::Prime)
        .map_err(|_| format!("--field takes a prime number or Q, got `{}`", s))
}

fn config_for(cli: &Cli, resolved: &ResolvedInput) -> Result<EnumConfig, String> {
    let field = match &cli.field {
        Some(s) => parse_field(s)?,
        None => resolved.raw.field.unwrap_or(FieldTag::Prime(2)),
    };
    Ok(EnumConfig {
        field,
        max_total_dim: cli.max_dim.or(resolved.raw.max_dim).unwrap_or(6),
        seed: cli.seed.or(resolved.raw.seed).unwrap_or(0),
        parallel: cli.parallel || resolved.raw.parallel.unwrap_or(false),
    })
}

fn field_override(cli: &Cli) -> Result<Option<FieldTag>, String> {
    cli.field.as_deref().map(parse_field).transpose()
}

fn run_analyze(resolved: &ResolvedInput, cfg: &EnumConfig) -> String {
    let a = &resolved.algebra;
    let ext = &resolved.ext;
    let mut out = String::new();
    out.push_str(&format!(
        "algebra: {} vertices, {} arrows, dimension {}\n",
        a.vertex_count,
        a.quiver.arrows.len(),
        a.dim
    ));
    out.push_str(&format!(
        "bimodule: {:?} kind, dimension {}\n",
        ext.bimodule.kind, ext.bimodule.dim
    ));
    out.push_str(&format!(
        "trivial extension dimension: {}\n",
        a.dim + ext.bimodule.dim
    ));
    for v in 0..a.vertex_count {
        for (name, module) in [
            (format!("P({})", v + 1), projective_module(a, v)),
            (format!("S({})", v + 1), simple_module(a, v)),
            (format!("I({})", v + 1), injective_module(a, v)),
        ] {
            let pres = minimal_presentation(&module);
            out.push_str(&format!(
                "{}: dims {:?}, tau-rigid: {}, presentation P{:?} -> P{:?}\n",
                name,
                module.dims,
                is_tau_rigid(&module),
                pres.p1.rep.dims,
                pres.p0.rep.dims,
            ));
            let t = functor_t(ext, &module);
            let z = functor_z(ext, &module);
            out.push_str(&format!(
                "  T({}): dims {:?}, tau-rigid over the extension: {}\n",
                name,
                t.rep.dims,
                pair_is_tau_rigid(&t)
            ));
            out.push_str(&format!(
                "  Z({}): dims {:?}, tau-rigid over the extension: {}\n",
                name,
                z.rep.dims,
                pair_is_tau_rigid(&z)
            ));
        }
    }
    out.push_str(&format!(
        "enumeration defaults: field {:?}, max total dim {}, seed {}\n",
        cfg.field, cfg.max_total_dim, cfg.seed
    ));
    out
}

fn run_classify(resolved: &ResolvedInput, cfg: &EnumConfig) -> Result<String, taucrest::classify::ClassifyError> {
    let a = &resolved.algebra;
    let ext = &resolved.ext;
    let seed = cfg.seed;
    let base = enumerate_support_tau_tilting(a, cfg)?;
    let labeler = Labeler::for_algebra(a, seed);
    let tau_labels: Vec<String> = base.tau_rigid.iter().map(|r| labeler.label(r)).collect();
    let pairs = enumerate_pair_support_tau_tilting(ext, cfg)?;
    let a_classes: Vec<_> = base.tau_rigid.clone();
    let pair_labeler = PairLabeler::build(ext, &labeler, &a_classes, seed);

    let mut out = String::new();
    for w in base.warnings.iter().chain(&pairs.warnings) {
        out.push_str(&format!("warning: {}\n", w));
    }
    out.push_str("tau-rigid indecomposables (base algebra):\n");
    for (r, l) in base.tau_rigid.iter().zip(&tau_labels) {
        out.push_str(&format!("  {}  dims {:?}\n", l, r.dims));
    }
    out.push_str("support tau-tilting pairs (base algebra):\n");
    for rec in &base.records {
        let m = if rec.module_indices.is_empty() {
            "0".to_string()
        } else {
            rec.module_indices
                .iter()
                .map(|&i| tau_labels[i].clone())
                .collect::<Vec<_>>()
                .join("+")
        };
        let p = if rec.proj_vertices.is_empty() {
            "0".to_string()
        } else {
            rec.proj_vertices
                .iter()
                .map(|&v| format!("P({})", v + 1))
                .collect::<Vec<_>>()
                .join("+")
        };
        out.push_str(&format!("  module: {} | proj: {}\n", m, p));
    }
    out.push_str("indecomposables (trivial extension):\n");
    for x in &pairs.indecs {
        out.push_str(&format!(
            "  {}  dims {:?}{}\n",
            pair_labeler.label(x),
            x.rep.dims,
            if pair_is_tau_rigid(x) { "  tau-rigid" } else { "" }
        ));
    }
    out.push_str("support tau-tilting pairs (trivial extension):\n");
    for rec in &pairs.records {
        let m = if rec.module_indices.is_empty() {
            "0".to_string()
        } else {
            rec.module_indices
                .iter()
                .map(|&i| pair_labeler.label(&pairs.indecs[i]))
                .collect::<Vec<_>>()
                .join("+")
        };
        let p = if rec.proj_vertices.is_empty() {
            "0".to_string()
        } else {
            rec.proj_vertices
                .iter()
                .map(|&v| format!("T(P({}))", v + 1))
                .collect::<Vec<_>>()
                .join("+")
        };
        let form = match (rec.t_form, rec.z_form) {
            (true, true) => "T=Z",
            (true, false) => "T",
            (false, true) => "Z",
            (false, false) => "neither",
        };
        out.push_str(&format!("  module: {} | proj: {} | form: {}\n", m, p, form));
    }
    Ok(out)
}

fn built_in_dual_example() -> VerifyInput {
    let pres = AlgebraPresentation {
        quiver: Quiver::new(2, vec![(0, 1, "a")]),
        relations: vec![],
        nilpotency_bound: 2,
        field: FieldTag::Prime(2),
    };
    let a = taucrest::algebra::build_algebra(&pres).unwrap();
    let m = dual_bimodule(&a);
    VerifyInput {
        ext: TrivialExtension::new(a, m),
        product: None,
    }
}

fn built_in_triangular_example() -> VerifyInput {
    let pres = AlgebraPresentation {
        quiver: Quiver::new(2, vec![(0, 1, "a")]),
        relations: vec![],
        nilpotency_bound: 2,
        field: FieldTag::Prime(2),
    };
    let prod = Arc::new(product_algebra(&pres, &pres).unwrap());
    let r = &prod.r;
    let left: Vec<Mat> = (0..r.dim).map(|b| r.left_mult_mat(b).clone()).collect();
    let right: Vec<Mat> = (0..r.dim).map(|b| r.right_mult_mat(b).clone()).collect();
    let m = triangular_bimodule(&prod, left, right).unwrap();
    VerifyInput {
        ext: TrivialExtension::new(prod.algebra.clone(), m),
        product: Some(prod),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_verified) => {
            if all_verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Analyze { file } => {
            let resolved = resolve(cli, file)?;
            let cfg = config_for(cli, &resolved)?;
            print!("{}", run_analyze(&resolved, &cfg));
            Ok(true)
        }
        Command::Classify { file } => {
            let resolved = resolve(cli, file)?;
            let cfg = config_for(cli, &resolved)?;
            let out = run_classify(&resolved, &cfg).map_err(|e| e.to_string())?;
            print!("{}", out);
            Ok(true)
        }
        Command::Verify { file } => {
            let resolved = resolve(cli, file)?;
            let cfg = config_for(cli, &resolved)?;
            let input = VerifyInput {
                ext: resolved.ext.clone(),
                product: resolved.product.clone(),
            };
            let report = verify_theorems(&input, &cfg).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Machine => print!("{}", report.render_machine()),
            }
            Ok(report.all_verified())
        }
        Command::Examples => {
            let mut cfg = EnumConfig::new(FieldTag::Prime(2));
            cfg.max_total_dim = cli.max_dim.unwrap_or(4);
            cfg.seed = cli.seed.unwrap_or(0);
            cfg.parallel = cli.parallel;
            let mut all = true;
            for (name, input) in [
                ("two-vertex path algebra with its dual bimodule", built_in_dual_example()),
                ("triangular gluing of two copies of the two-vertex path algebra", built_in_triangular_example()),
            ] {
                let report = verify_theorems(&input, &cfg).map_err(|e| e.to_string())?;
                match cli.format {
                    Format::Text => {
                        println!("=== {} ===", name);
                        print!("{}", report.render_text());
                        println!();
                    }
                    Format::Machine => print!("{}", report.render_machine()),
                }
                all &= report.all_verified();
            }
            Ok(all)
        }
    }
}

fn resolve(cli: &Cli, file: &PathBuf) -> Result<ResolvedInput, String> {
    let field = field_override(cli)?;
    resolve_input(file, field).map_err(|e: InputError| e.to_string())
}
