//! Command-line front end.
//!
//! Exit codes: 0 = success / verdict holds, 2 = a mathematical verdict was
//! violated (witnesses listed), 1 = usage or internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mvsf::conjectures::{check_alt_sign_l0, check_hook, check_n01_facts};
use mvsf::exactnum::format_rat;
use mvsf::expand::{linearize, recurrence, sparsity_report};
use mvsf::mop::{build_psi, build_psi_family, verify_psi_recurrence};
use mvsf::papertables::{compare_with_computed, TableId};
use mvsf::polyalg::{PolyMatrix, RatMatrix};
use mvsf::spherical::{
    build_family, build_phi_raw, check_lambda_consistency, eigen_matrices, load_family_file,
    normalize_matrix, SphericalFamily, SphericalType,
};

#[derive(Parser)]
#[command(name = "mvsf", version, about = "Matrix-valued spherical functions of the complex projective plane: exact construction, linearization, recurrences, and sign-pattern checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FamilyArgs {
    /// Type parameter l (matrix size is l+1); l >= 2 requires --family-file
    #[arg(long)]
    l: u32,
    /// Type parameter n (n >= 0)
    #[arg(long)]
    n: u32,
    /// Load the family from a JSON file instead of constructing it
    #[arg(long)]
    family_file: Option<PathBuf>,
}

impl FamilyArgs {
    fn load(&self, w_max: u32) -> Result<SphericalFamily, String> {
        if let Some(path) = &self.family_file {
            let fam = load_family_file(path).map_err(|e| e.to_string())?;
            let ty = fam.ty();
            if ty.l != self.l || ty.n != self.n {
                return Err(format!(
                    "family file is for (n={}, l={}), requested (n={}, l={})",
                    ty.n, ty.l, self.n, self.l
                ));
            }
            if !fam.is_normalized() {
                return Err("family file must be declared normalized".into());
            }
            if fam.max_index().map_or(true, |m| m < w_max) {
                return Err(format!("family file must contain members up to w={w_max}"));
            }
            Ok(fam)
        } else if self.l <= 1 {
            build_family(SphericalType { n: self.n, l: self.l }, w_max)
                .map_err(|e| e.to_string())
        } else {
            Err(format!("l={} needs --family-file", self.l))
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the matrix Phi(w,t) of one type
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        w: u32,
        /// Normalize so that the matrix is all ones at t=1
        #[arg(long)]
        normalized: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand Phi(i,t) Phi(j,t) in the family basis
    Linearize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the three-term recurrence matrices at index w
    Recurrence {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        w: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the orthogonal-polynomial member Psi(j,t) = Phi(j,t) Phi(0,t)^-1
    Psi {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the diagonal eigenvalue matrices Lambda and M
    Eigen {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sweep a conjecture check over a parameter grid
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// Strictly alternating scalar signs (l=0, n>1)
    AltSign,
    /// n=0 positivity / n=1 zero pattern (l=0)
    N01Facts,
    /// Hook alternating property in the traditional range (l>=1, n>1)
    Hook,
    /// Computed expansions against the reference coefficient tables
    PaperTables,
    /// Existence, uniqueness and row sums of the recurrence triples
    Recurrence,
    /// Row eigenvalues against the diagonal of Lambda
    Lambda,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    which: CheckKind,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// n range, inclusive, e.g. "2..8" or "3"
    #[arg(long, default_value = "2..8")]
    n: String,
    #[arg(long, default_value_t = 6)]
    i_max: u32,
    #[arg(long, default_value_t = 6)]
    j_max: u32,
    #[arg(long, default_value_t = 10)]
    w_max: u32,
    #[arg(long)]
    family_file: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        let hi: u32 = b.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        Ok((v, v))
    }
}

fn print_poly_matrix(m: &PolyMatrix) {
    if m.rows() == 1 && m.cols() == 1 {
        println!("{}", m.at(0, 0));
        return;
    }
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.at(r, c).to_string()).collect();
        println!("[{}]", row.join(",  "));
    }
}

fn print_rat_matrix(label: &str, m: &RatMatrix) {
    if m.rows() == 1 && m.cols() == 1 {
        println!("{label} = {}", format_rat(m.at(0, 0)));
        return;
    }
    println!("{label} =");
    let cells = m.to_strings();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &cells {
        let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        println!("  [{}]", padded.join("  "));
    }
}

fn run() -> Result<bool, String> {
    // Ok(true) = verdict holds / success, Ok(false) = violation (exit 2)
    let cli = Cli::try_parse().map_err(|e| {
        // let clap render its own help/version output
        e.print().ok();
        String::new()
    })?;
    match cli.command {
        Command::Build { family, w, normalized, format } => {
            let m = if family.family_file.is_some() {
                family.load(w)?.member(w).map_err(|e| e.to_string())?.clone()
            } else {
                let raw = build_phi_raw(SphericalType { n: family.n, l: family.l }, w)
                    .map_err(|e| e.to_string())?;
                if normalized {
                    normalize_matrix(&raw, w).map_err(|e| e.to_string())?
                } else {
                    raw
                }
            };
            match format {
                Format::Text => print_poly_matrix(&m),
                Format::Json if normalized || family.family_file.is_some() => {
                    // family-file schema, so the output feeds back into --family-file
                    let fam = family.load(w)?;
                    println!("{}", fam.to_json());
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&m.to_strings()).unwrap()
                ),
            }
            Ok(true)
        }
        Command::Linearize { family, i, j, format } => {
            let (i, j) = (i.min(j), i.max(j));
            let fam = family.load(i + j + family.l)?;
            let exp = linearize(&fam, i, j).map_err(|e| e.to_string())?;
            match format {
                Format::Text => {
                    println!(
                        "Phi({i},t) Phi({j},t) = sum over k = {}..{} (l={}, n={})",
                        exp.kmin, exp.kmax, exp.l, exp.n
                    );
                    for (k, a) in &exp.coeffs {
                        print_rat_matrix(&format!("A_{k}"), a);
                    }
                }
                Format::Json => println!("{}", exp.to_json()),
            }
            Ok(true)
        }
        Command::Recurrence { family, w, format } => {
            let fam = family.load(w + 1)?;
            let triple = recurrence(&fam, w).map_err(|e| e.to_string())?;
            match format {
                Format::Text => {
                    println!("t Phi({w},t) = A Phi({},t) + B Phi({w},t) + C Phi({},t)", w.saturating_sub(1), w + 1);
                    print_rat_matrix("A", &triple.a);
                    print_rat_matrix("B", &triple.b);
                    print_rat_matrix("C", &triple.c);
                    let rep = sparsity_report(&triple);
                    if rep.vacuous {
                        println!("sparsity: conforming (vacuous at size {})", rep.size);
                    } else {
                        println!("sparsity: conforming = {}", rep.conforming);
                    }
                }
                Format::Json => {
                    let obj = serde_json::json!({
                        "w": w,
                        "A": triple.a.to_strings(),
                        "B": triple.b.to_strings(),
                        "C": triple.c.to_strings(),
                        "sparsity": sparsity_report(&triple),
                    });
                    println!("{}", serde_json::to_string_pretty(&obj).unwrap());
                }
            }
            Ok(true)
        }
        Command::Psi { family, j, format } => {
            let fam = family.load(j)?;
            let psi = build_psi(&fam, j).map_err(|e| e.to_string())?;
            match format {
                Format::Text => print_poly_matrix(&psi),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&psi.to_strings()).unwrap()
                ),
            }
            Ok(true)
        }
        Command::Eigen { l, n, w, format } => {
            let eig = eigen_matrices(SphericalType { n, l }, w);
            let lam: Vec<String> = eig.lambda.iter().map(format_rat).collect();
            let m: Vec<String> = eig.m.iter().map(format_rat).collect();
            match format {
                Format::Text => {
                    println!("Lambda = diag({})", lam.join(", "));
                    println!("M      = diag({})", m.join(", "));
                }
                Format::Json => {
                    let obj = serde_json::json!({ "w": w, "Lambda": lam, "M": m });
                    println!("{}", serde_json::to_string_pretty(&obj).unwrap());
                }
            }
            Ok(true)
        }
        Command::Check(args) => run_check(args),
    }
}

/// One independent sweep cell: canonical sort key, plus a pure closure that
/// produces the rendered report block and the verdict.
type Cell<'a> = Box<dyn Fn() -> Result<(String, bool), String> + Send + Sync + 'a>;

fn worker_count() -> usize {
    std::env::var("MVSF_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

/// Evaluate cells, streaming results in canonical (input) order. With
/// MVSF_WORKERS > 1 the cells are computed by a pool and the report is
/// printed afterwards, still in canonical order, byte-identical to a
/// sequential run.
fn run_cells(cells: Vec<Cell<'_>>) -> Result<bool, String> {
    let workers = worker_count().min(cells.len().max(1));
    let mut all_hold = true;
    let count = cells.len();
    if workers <= 1 {
        for cell in &cells {
            let (block, holds) = cell()?;
            print!("{block}");
            all_hold &= holds;
        }
    } else {
        use std::sync::atomic::{AtomicUsize, Ordering};
        use std::sync::Mutex;
        let next = AtomicUsize::new(0);
        let results: Vec<Mutex<Option<Result<(String, bool), String>>>> =
            (0..count).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= count {
                        break;
                    }
                    let out = cells[i]();
                    *results[i].lock().unwrap() = Some(out);
                });
            }
        });
        for slot in results {
            let (block, holds) = slot.into_inner().unwrap().unwrap()?;
            print!("{block}");
            all_hold &= holds;
        }
    }
    println!(
        "{count} cells checked: {}",
        if all_hold { "all hold" } else { "violations found" }
    );
    Ok(all_hold)
}

fn render_witness_block(label: &str, holds: bool, witnesses: &[mvsf::conjectures::Witness]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "{label}: {}", if holds { "holds" } else { "VIOLATED" }).unwrap();
    for w in witnesses {
        match w {
            mvsf::conjectures::Witness::WrongSign { k, row, col, value, expected } => {
                writeln!(out, "  k={k} ({row},{col}): value {value}, expected {expected:?}").unwrap();
            }
            mvsf::conjectures::Witness::ZeroEntry { k, row, col } => {
                writeln!(out, "  k={k} ({row},{col}): zero entry").unwrap();
            }
        }
    }
    out
}

fn run_check(args: CheckArgs) -> Result<bool, String> {
    let (n_lo, n_hi) = parse_range(&args.n)?;
    // Families are cheap to build next to the expansions, so construct them
    // up front per n and let the cells borrow them.
    let mut families: std::collections::BTreeMap<u32, SphericalFamily> = Default::default();
    let need_family = matches!(
        args.which,
        CheckKind::AltSign | CheckKind::N01Facts | CheckKind::Hook | CheckKind::Recurrence
    );
    if need_family {
        let w_max = match args.which {
            CheckKind::Recurrence => args.w_max + 1,
            _ => args.i_max + args.j_max + args.l,
        };
        for n in n_lo..=n_hi {
            families.insert(n, family_for(&args, n, w_max)?);
        }
    }
    let mut cells: Vec<Cell<'_>> = Vec::new();
    match args.which {
        CheckKind::AltSign => {
            if args.l != 0 {
                return Err("alt-sign is an l=0 check".into());
            }
            for n in n_lo..=n_hi {
                let fam = &families[&n];
                for i in 1..=args.i_max {
                    for j in i..=args.j_max {
                        cells.push(Box::new(move || {
                            let rep = check_alt_sign_l0(fam, i, j).map_err(|e| e.to_string())?;
                            Ok((
                                render_witness_block(
                                    &format!("alt-sign n={n} i={i} j={j}"),
                                    rep.holds,
                                    &rep.witnesses,
                                ),
                                rep.holds,
                            ))
                        }));
                    }
                }
            }
        }
        CheckKind::N01Facts => {
            if args.l != 0 {
                return Err("n01-facts is an l=0 check".into());
            }
            if n_hi > 1 {
                return Err("n01-facts applies to n in {0,1}".into());
            }
            for n in n_lo..=n_hi {
                let fam = &families[&n];
                for i in 1..=args.i_max {
                    for j in i..=args.j_max {
                        cells.push(Box::new(move || {
                            let rep = check_n01_facts(fam, i, j).map_err(|e| e.to_string())?;
                            Ok((
                                render_witness_block(
                                    &format!("n01-facts n={n} i={i} j={j}"),
                                    rep.holds,
                                    &rep.witnesses,
                                ),
                                rep.holds,
                            ))
                        }));
                    }
                }
            }
        }
        CheckKind::Hook => {
            if args.l == 0 {
                return Err("hook is an l>=1 check; use alt-sign for l=0".into());
            }
            if n_lo < 2 {
                return Err("hook requires n > 1".into());
            }
            for n in n_lo..=n_hi {
                let fam = &families[&n];
                for i in 1..=args.i_max {
                    for j in (i + 1)..=args.j_max {
                        cells.push(Box::new(move || {
                            let rep = check_hook(fam, i, j).map_err(|e| e.to_string())?;
                            Ok((
                                render_witness_block(
                                    &format!("hook n={n} i={i} j={j}"),
                                    rep.holds,
                                    &rep.witnesses,
                                ),
                                rep.holds,
                            ))
                        }));
                    }
                }
            }
        }
        CheckKind::PaperTables => {
            for n in n_lo..=n_hi {
                for (which, l, i, j, w_max) in [
                    (TableId::L0I3J4, 0u32, 3u32, 4u32, 7u32),
                    (TableId::L1I2J6, 1, 2, 6, 9),
                ] {
                    cells.push(Box::new(move || {
                        use std::fmt::Write;
                        let fam = build_family(SphericalType { n, l }, w_max)
                            .map_err(|e| e.to_string())?;
                        let exp = linearize(&fam, i, j).map_err(|e| e.to_string())?;
                        let rep = compare_with_computed(which, n, &exp).map_err(|e| e.to_string())?;
                        let ok = rep.is_match();
                        let mut block = String::new();
                        writeln!(
                            block,
                            "table l={l} i={i} j={j} n={n}: {}",
                            if ok { "match" } else { "MISMATCH" }
                        )
                        .unwrap();
                        for m in &rep.mismatches {
                            writeln!(
                                block,
                                "  k={} ({}, {}): computed {} vs table {}",
                                m.k, m.row, m.col, m.computed, m.table
                            )
                            .unwrap();
                        }
                        Ok((block, ok))
                    }));
                }
            }
        }
        CheckKind::Recurrence => {
            for n in n_lo..=n_hi {
                let fam = &families[&n];
                for w in 0..=args.w_max {
                    cells.push(Box::new(move || {
                        let block;
                        let ok;
                        match recurrence(fam, w) {
                            Ok(triple) => {
                                ok = triple
                                    .row_sums()
                                    .iter()
                                    .all(|s| *s == mvsf::exactnum::rat(1));
                                block = format!(
                                    "recurrence n={n} w={w}: {}\n",
                                    if ok { "holds" } else { "VIOLATED" }
                                );
                            }
                            Err(e) => {
                                ok = false;
                                block = format!("recurrence n={n} w={w}: VIOLATED ({e})\n");
                            }
                        }
                        Ok((block, ok))
                    }));
                }
            }
        }
        CheckKind::Lambda => {
            for n in n_lo..=n_hi {
                for w in 0..=args.w_max {
                    cells.push(Box::new(move || {
                        let ok = check_lambda_consistency(n, w);
                        Ok((
                            format!(
                                "lambda n={n} w={w}: {}\n",
                                if ok { "holds" } else { "VIOLATED" }
                            ),
                            ok,
                        ))
                    }));
                }
            }
        }
    }
    run_cells(cells)
}

fn family_for(args: &CheckArgs, n: u32, w_max: u32) -> Result<SphericalFamily, String> {
    let fa = FamilyArgs {
        l: args.l,
        n,
        family_file: args.family_file.clone(),
    };
    fa.load(w_max)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(msg) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

// used by the psi subcommand indirectly; keep the import exercised
#[allow(dead_code)]
fn _psi_family_probe(fam: &SphericalFamily) -> bool {
    build_psi_family(fam, 1)
        .map(|p| recurrence(fam, 0).map(|t| verify_psi_recurrence(&p, &t, 0)).unwrap_or(false))
        .unwrap_or(false)
}
