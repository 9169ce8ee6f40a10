//! Deterministic command-line front end over the symbol/theta library.
//!
//! Output is plain TSV or JSON on stdout (optionally redirected to a file),
//! byte-stable for fixed inputs. Exit codes: 0 on success, 1 when a
//! verification check fails, 2 on usage or parse errors. No color is ever
//! emitted, so `NO_COLOR` is respected trivially.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use theta_core::families::{enumerate_special, Family, GroupKind, SpecialSymbol};
use theta_core::reduction::reduce_to_regular;
use theta_core::series::{theta_rank, OccurrenceBasis, SeriesGroup, SeriesTriple, Sign};
use theta_core::symbols::Symbol;
use theta_core::theta::{build_relation, family_pairs, verify_main_theorem};
use theta_core::transform::fourier_matrix;
use theta_core::Error;

#[derive(Parser)]
#[command(
    name = "theta-cli",
    version,
    about = "Symbol families, almost-character transforms and the theta relation, exactly"
)]
struct Cli {
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Defect-1 specials (symplectic side).
    Sp,
    /// Defect-0 specials (even orthogonal side).
    O,
}

impl From<KindArg> for GroupKind {
    fn from(k: KindArg) -> GroupKind {
        match k {
            KindArg::Sp => GroupKind::Sp,
            KindArg::O => GroupKind::Opm,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Sp,
    O,
    SoOdd,
}

impl From<GroupArg> for SeriesGroup {
    fn from(g: GroupArg) -> SeriesGroup {
        match g {
            GroupArg::Sp => SeriesGroup::Sp,
            GroupArg::O => SeriesGroup::Opm,
            GroupArg::SoOdd => SeriesGroup::SOodd,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the special symbols of a rank and their family members.
    Families {
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Dump the almost-character transform matrix of one family.
    Fourier {
        /// The special symbol, e.g. "2,0;1".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// List the relation pairs at fixed ranks.
    Theta {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        nprime: u32,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Run the basis-equality sweep; exits nonzero on any failure.
    Verify {
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        max_nprime: u32,
        /// Also reduce every nonempty family pair to a regular one.
        #[arg(long)]
        with_reduction: bool,
    },
    /// Reduce a family pair to a regular relation.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        zprime: String,
        /// Print one line per step.
        #[arg(long)]
        trace: bool,
    },
    /// Theta rank of a series triple.
    ThetaRank {
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Expected total rank; checked against the triple when given.
        #[arg(long)]
        n: Option<u32>,
        /// Triple as "<g0rank>:<minus>:<plus>", e.g. "0:-;-:2;-".
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
}

fn kind_tag(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::Sp => "sp",
        GroupKind::Opm => "o",
    }
}

fn eps_tag(fam: &Family, index: usize) -> String {
    match fam.epsilon(fam.subset_at(index)) {
        Some(e) => e.to_string(),
        None => ".".to_string(),
    }
}

fn cmd_families(rank: u32, kind: GroupKind, format: Format) -> Result<String, Error> {
    let specials = enumerate_special(rank, kind);
    match format {
        Format::Tsv => {
            let mut out = String::new();
            out.push_str("special\tdegree\tmask\tsymbol\tdefect\teps\n");
            for z in &specials {
                let fam = Family::new(z.clone());
                for i in 0..fam.member_count() {
                    let s = fam.member_symbol(i);
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        z,
                        fam.degree(),
                        fam.subset_at(i),
                        s,
                        s.defect(),
                        eps_tag(&fam, i)
                    )
                    .unwrap();
                }
            }
            Ok(out)
        }
        Format::Json => {
            let families: Vec<_> = specials
                .iter()
                .map(|z| {
                    let fam = Family::new(z.clone());
                    let members: Vec<_> = (0..fam.member_count())
                        .map(|i| {
                            json!({
                                "mask": fam.subset_at(i),
                                "symbol": fam.member_symbol(i).to_string(),
                                "defect": fam.member_symbol(i).defect(),
                                "eps": eps_tag(&fam, i),
                            })
                        })
                        .collect();
                    json!({
                        "special": z.to_string(),
                        "degree": fam.degree(),
                        "members": members,
                    })
                })
                .collect();
            let doc = json!({
                "families": families,
                "meta": {"rank": rank, "kind": kind_tag(kind), "count": specials.len()},
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
    }
}

fn cmd_fourier(z_text: &str, format: Format) -> Result<String, Error> {
    let z: Symbol = z_text.parse()?;
    let fam = Family::new(SpecialSymbol::new(z)?);
    let matrix = fourier_matrix(&fam)?;
    let members: Vec<String> = fam.member_symbols().iter().map(|s| s.to_string()).collect();
    match format {
        Format::Tsv => {
            let mut out = String::new();
            writeln!(out, ".\t{}", members.join("\t")).unwrap();
            for (i, row) in matrix.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{}\t{}", members[i], cells.join("\t")).unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = matrix
                .iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect())
                .collect();
            let doc = json!({
                "special": fam.special().to_string(),
                "degree": fam.degree(),
                "members": members,
                "matrix": rows,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
    }
}

fn cmd_theta(n: u32, nprime: u32, format: Format) -> Result<String, Error> {
    let rel = build_relation(n, nprime);
    match format {
        Format::Tsv => {
            let mut out = String::new();
            out.push_str("left\tright\teps\n");
            for (a, b, e) in rel.pairs() {
                writeln!(out, "{}\t{}\t{}", a, b, e).unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let pairs: Vec<_> = rel
                .pairs()
                .iter()
                .map(|(a, b, e)| {
                    json!({"left": a.to_string(), "right": b.to_string(), "eps": e.to_string()})
                })
                .collect();
            let doc = json!({
                "pairs": pairs,
                "meta": {"n": n, "nprime": nprime, "count": rel.len()},
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
    }
}

fn cmd_verify(max_n: u32, max_nprime: u32, with_reduction: bool) -> (String, bool) {
    let start = Instant::now();
    let mut out = String::new();
    let mut all_pass = true;
    writeln!(
        out,
        "command\tverify --max-n {} --max-nprime {}{}",
        max_n,
        max_nprime,
        if with_reduction {
            " --with-reduction"
        } else {
            ""
        }
    )
    .unwrap();
    for n in 0..=max_n {
        for np in 0..=max_nprime {
            let rep = verify_main_theorem(n, np);
            let mut line_pass = rep.pass();
            let mut reductions = 0usize;
            if with_reduction {
                for z in enumerate_special(n, GroupKind::Sp) {
                    let fam = Family::new(z.clone());
                    for zp in enumerate_special(np, GroupKind::Opm) {
                        let fam_p = Family::new(zp.clone());
                        if family_pairs(&fam, &fam_p).is_empty() {
                            continue;
                        }
                        match reduce_to_regular(&z, &zp) {
                            Ok(_) => reductions += 1,
                            Err(e) => {
                                writeln!(out, "reduction-error\t{}\t{}\t{}", z, zp, e).unwrap();
                                line_pass = false;
                            }
                        }
                    }
                }
            }
            all_pass &= line_pass;
            writeln!(
                out,
                "check\tn={}\tnprime={}\tpairs={}\tfamilies={}\treductions={}\t{}",
                n,
                np,
                rep.total_pairs(),
                rep.families.len(),
                reductions,
                if line_pass { "pass" } else { "FAIL" }
            )
            .unwrap();
            if !line_pass {
                for f in rep.families.iter().filter(|f| !f.pass()) {
                    writeln!(out, "family-fail\t{}\t{}", f.z, f.zp).unwrap();
                }
            }
        }
    }
    writeln!(
        out,
        "total\t{}\telapsed_ms\t{}",
        if all_pass { "pass" } else { "FAIL" },
        start.elapsed().as_millis()
    )
    .unwrap();
    (out, all_pass)
}

fn cmd_reduce(z_text: &str, zp_text: &str, trace: bool) -> Result<String, Error> {
    let z = SpecialSymbol::new(z_text.parse::<Symbol>()?)?;
    let zp = SpecialSymbol::new(zp_text.parse::<Symbol>()?)?;
    let result = reduce_to_regular(&z, &zp)?;
    let mut out = String::new();
    if trace {
        let fmt_pair = |p: Option<(u32, u32)>| match p {
            Some((a, b)) => format!("{};{}", a, b),
            None => "-".to_string(),
        };
        for (i, step) in result.steps.iter().enumerate() {
            writeln!(
                out,
                "step\t{}\tcase\t{}\tpsi\t{}\tpsi'\t{}\tz\t{}\tz'\t{}\tc\t{}",
                i + 1,
                step.case,
                fmt_pair(step.psi),
                fmt_pair(step.psi_p),
                step.z_next,
                step.zp_next,
                step.constant
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "total\t{}\tterminal\t{}\t{}\tsteps\t{}",
        result.total_c,
        result.terminal.0,
        result.terminal.1,
        result.steps.len()
    )
    .unwrap();
    Ok(out)
}

fn cmd_theta_rank(group: SeriesGroup, n: Option<u32>, triple: &str) -> Result<String, Error> {
    let parts: Vec<&str> = triple.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "triple must be <g0rank>:<minus>:<plus>, got `{}`",
            triple
        )));
    }
    let g0_rank: u32 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad g0 rank `{}`", parts[0])))?;
    let minus: Symbol = parts[1].parse()?;
    let plus: Symbol = parts[2].parse()?;
    let t = SeriesTriple::new(group, "g0", g0_rank, minus, plus, Sign::Pos)?;
    if let Some(expected) = n {
        if expected != t.total_rank() {
            return Err(Error::Parse(format!(
                "total rank of the triple is {}, but --n {} was given",
                t.total_rank(),
                expected
            )));
        }
    }
    let r = theta_rank(&t, OccurrenceBasis::Irreducible)?;
    let mut out = String::new();
    writeln!(out, "triple\t{}", t).unwrap();
    writeln!(out, "rank\t{}", r.rank).unwrap();
    writeln!(out, "witness_companion\t{}", r.companion).unwrap();
    writeln!(out, "witness_k\t{}", r.k).unwrap();
    writeln!(out, "witness_partner\t{}", r.partner).unwrap();
    Ok(out)
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| format!("cannot write {}: {}", path.display(), e))
        }
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(String, bool), Error> = match &cli.command {
        Command::Families { rank, kind, format } => {
            cmd_families(*rank, (*kind).into(), *format).map(|s| (s, true))
        }
        Command::Fourier { z, format } => cmd_fourier(z, *format).map(|s| (s, true)),
        Command::Theta { n, nprime, format } => cmd_theta(*n, *nprime, *format).map(|s| (s, true)),
        Command::Verify {
            max_n,
            max_nprime,
            with_reduction,
        } => Ok(cmd_verify(*max_n, *max_nprime, *with_reduction)),
        Command::Reduce { z, zprime, trace } => cmd_reduce(z, zprime, *trace).map(|s| (s, true)),
        Command::ThetaRank { group, n, triple } => {
            cmd_theta_rank((*group).into(), *n, triple).map(|s| (s, true))
        }
    };
    match result {
        Ok((text, pass)) => {
            if let Err(e) = emit(cli.out, &text) {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
