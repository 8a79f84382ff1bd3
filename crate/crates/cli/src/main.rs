//! Command-line surface: compute stable-basis matrices, characteristic
//! classes, and p-adic transition matrices, and run verification suites.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use springer_stable::cohstable;
use springer_stable::exactalg::VarMode;
use springer_stable::heckealg::Sign;
use springer_stable::matio::{self, MatrixDoc};
use springer_stable::motivic;
use springer_stable::padic;
use springer_stable::rootpoly;
use springer_stable::stablecalc::{self, KCtx, Polarization, StabParams};
use springer_stable::verify;
use springer_stable::weyl::RootSystem;

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "springer-stable", version, about = "Stable-basis calculator for the Springer resolution")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Cartan type letter (A, B, C, D, G)
    #[arg(long = "type", value_name = "LETTER")]
    type_label: char,
    /// Rank
    #[arg(long)]
    rank: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Copy, Clone, ValueEnum)]
enum PolarizationArg {
    Cotangent,
    Tangent,
}

#[derive(Copy, Clone, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

#[derive(Copy, Clone, ValueEnum)]
enum CellArg {
    X,
    Y,
}

#[derive(Copy, Clone, ValueEnum)]
enum RouteArg {
    /// Duality route through stab₊
    X,
    /// Twist route through stab₋
    Y,
}

#[derive(Subcommand)]
enum Cmd {
    /// K-theoretic stable basis matrix for given chamber/polarization/alcove
    StabK {
        #[command(flatten)]
        ty: TypeArgs,
        /// Chamber as "w+" or "w-" (reduced word, trailing sign)
        #[arg(long, default_value = "e-")]
        chamber: String,
        #[arg(long, value_enum, default_value = "cotangent")]
        polarization: PolarizationArg,
        /// Alcove as "x;m1,...,mr" (reduced word; integer shift)
        #[arg(long, default_value = "e;0")]
        alcove: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cohomological stable basis matrix
    StabCoh {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Root-polynomial coefficient table K_{v,w}
    Rootpoly {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// CSM class restriction matrix
    Csm {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "x")]
        cell: CellArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Motivic Chern class restriction matrix
    Mc {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "x")]
        route: RouteArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// p-adic transition matrix and BNN verdicts
    Padic {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also print the per-pair BNN verdict table
        #[arg(long)]
        verdicts: bool,
    },
    /// Cross one zero-wall of the given alcove and print the new matrix
    Wall {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value = "e-")]
        chamber: String,
        #[arg(long, value_enum, default_value = "cotangent")]
        polarization: PolarizationArg,
        #[arg(long, default_value = "e;0")]
        alcove: String,
        /// Positive-root index of the wall to cross
        #[arg(long)]
        root: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run verification suites; exit nonzero on any failure
    Verify {
        #[command(flatten)]
        ty: TypeArgs,
        /// "all" (criteria 1-11), "long" (adds the A3 two-algorithm sweep),
        /// or a single criterion number
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn emit(doc: &MatrixDoc, format: Format) -> Result<(), String> {
    let out = match format {
        Format::Json => doc.to_json().map_err(|e| e.to_string())?,
        Format::Csv => doc.to_csv(),
        Format::Latex => doc.to_latex(),
    };
    println!("{}", out);
    Ok(())
}

fn build(ty: &TypeArgs) -> Result<RootSystem, String> {
    RootSystem::build(ty.type_label, ty.rank).map_err(|e| e.to_string())
}

fn stab_params(
    rs: &RootSystem,
    chamber: &str,
    polarization: PolarizationArg,
    alcove: &str,
) -> Result<StabParams, String> {
    Ok(StabParams {
        chamber: rs.parse_chamber(chamber).map_err(|e| e.to_string())?,
        polarization: match polarization {
            PolarizationArg::Cotangent => Polarization::Cotangent,
            PolarizationArg::Tangent => Polarization::Tangent,
        },
        alcove: rs.parse_alcove(alcove).map_err(|e| e.to_string())?,
    })
}

fn sign_of(s: SignArg) -> Sign {
    match s {
        SignArg::Minus => Sign::Minus,
        SignArg::Plus => Sign::Plus,
    }
}

fn run(cmd: &Cmd) -> Result<bool, String> {
    match cmd {
        Cmd::StabK { ty, chamber, polarization, alcove, format } => {
            let rs = build(ty)?;
            let ctx = KCtx::new(&rs);
            let params = stab_params(&rs, chamber, *polarization, alcove)?;
            let fam = stablecalc::stab_general(&rs, &ctx, &params).map_err(|e| e.to_string())?;
            emit(&matio::matrix_from_classes(&rs, VarMode::KTheory, &fam.classes), *format)?;
        }
        Cmd::StabCoh { ty, sign, format } => {
            let rs = build(ty)?;
            let classes = match sign {
                SignArg::Minus => {
                    (0..rs.order()).map(|w| cohstable::stab_minus_coh(&rs, w)).collect()
                }
                SignArg::Plus => cohstable::stab_plus_coh_family(&rs),
            };
            emit(&matio::matrix_from_classes(&rs, VarMode::Cohomology, &classes), *format)?;
        }
        Cmd::Rootpoly { ty, sign, format } => {
            let rs = build(ty)?;
            let sign = sign_of(*sign);
            let mut table = Vec::new();
            for w in 0..rs.order() {
                let ks = rootpoly::k_coefficients(&rs, sign, w).map_err(|e| e.to_string())?;
                let mut row = Vec::new();
                for v in 0..rs.order() {
                    let k = match ks.get(&v) {
                        Some(k) => rootpoly::project_y(&rs, k).map_err(|e| e.to_string())?,
                        None => springer_stable::exactalg::RatFunc::zero(rs.rank),
                    };
                    row.push(k);
                }
                table.push(row);
            }
            let doc = matio::matrix_from_grid(&rs, VarMode::KTheory, |v, w| {
                table[w][v].clone()
            });
            emit(&doc, *format)?;
        }
        Cmd::Csm { ty, cell, format } => {
            let rs = build(ty)?;
            let cell = match cell {
                CellArg::X => cohstable::Cell::X,
                CellArg::Y => cohstable::Cell::Y,
            };
            let mut classes = Vec::new();
            for w in 0..rs.order() {
                classes.push(cohstable::csm_class(&rs, cell, w).map_err(|e| e.to_string())?);
            }
            emit(&matio::matrix_from_classes(&rs, VarMode::Cohomology, &classes), *format)?;
        }
        Cmd::Mc { ty, route, format } => {
            let rs = build(ty)?;
            let classes = match route {
                RouteArg::X => motivic::mc_family_x(&rs),
                RouteArg::Y => motivic::mc_family_y(&rs),
            };
            emit(&matio::matrix_from_classes(&rs, VarMode::KTheory, &classes), *format)?;
        }
        Cmd::Padic { ty, format, verdicts } => {
            let rs = build(ty)?;
            let tm = padic::transition_matrix(&rs);
            let doc = matio::matrix_from_grid(&rs, VarMode::KTheory, |u, w| tm.m[u][w].clone());
            emit(&doc, *format)?;
            if *verdicts {
                let mut rows = Vec::new();
                for u in 0..rs.order() {
                    for w in 0..rs.order() {
                        if !rs.bruhat_leq(u, w) {
                            continue;
                        }
                        let v = padic::bnn_tests(&rs, &tm, u, w).map_err(|e| e.to_string())?;
                        rows.push(serde_json::json!({
                            "u": rs.word_string(u),
                            "w": rs.word_string(w),
                            "factorization": v.factorization,
                            "rationally_smooth": v.rationally_smooth,
                            "analytic": v.analytic,
                        }));
                    }
                }
                match format {
                    Format::Csv => {
                        println!("u,w,factorization,rationally_smooth,analytic");
                        for r in &rows {
                            println!(
                                "{},{},{},{},{}",
                                r["u"].as_str().unwrap(),
                                r["w"].as_str().unwrap(),
                                r["factorization"],
                                r["rationally_smooth"],
                                r["analytic"]
                            );
                        }
                    }
                    _ => println!(
                        "{}",
                        serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?
                    ),
                }
            }
        }
        Cmd::Wall { ty, chamber, polarization, alcove, root, format } => {
            let rs = build(ty)?;
            let ctx = KCtx::new(&rs);
            let params = stab_params(&rs, chamber, *polarization, alcove)?;
            let walls = stablecalc::zero_walls(&rs, &params.alcove);
            if !walls.contains(root) {
                return Err(format!(
                    "root index {} is not a zero-wall of this alcove (walls: {:?})",
                    root, walls
                ));
            }
            let fam = stablecalc::stab_general(&rs, &ctx, &params).map_err(|e| e.to_string())?;
            let crossed = stablecalc::wall_cross(&rs, &fam, *root).map_err(|e| e.to_string())?;
            emit(&matio::matrix_from_classes(&rs, VarMode::KTheory, &crossed.classes), *format)?;
        }
        Cmd::Verify { ty: _, suite } => {
            let reports = match suite.as_str() {
                "all" => verify::run_all(false),
                "long" => verify::run_all(true),
                n => {
                    let id: usize = n
                        .parse()
                        .map_err(|_| format!("suite must be \"all\", \"long\", or 1-11, got {:?}", n))?;
                    if !(1..=11).contains(&id) {
                        return Err(format!("criterion id {} out of range 1-11", id));
                    }
                    vec![match id {
                        1 => verify::criterion_1(),
                        2 => verify::criterion_2(false),
                        3 => verify::criterion_3(),
                        4 => verify::criterion_4(),
                        5 => verify::criterion_5(),
                        6 => verify::criterion_6(),
                        7 => verify::criterion_7(),
                        8 => verify::criterion_8(),
                        9 => verify::criterion_9(),
                        10 => verify::criterion_10(),
                        _ => verify::criterion_11(),
                    }]
                }
            };
            let mut ok = true;
            for r in &reports {
                let verdict = if r.pass { "pass" } else { "FAIL" };
                if r.detail.is_empty() {
                    println!("criterion {:2} {} ({})", r.id, verdict, r.name);
                } else {
                    println!("criterion {:2} {} ({}): {}", r.id, verdict, r.name, r.detail);
                }
                ok &= r.pass;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(EXIT_USAGE)
        }
    }
}
