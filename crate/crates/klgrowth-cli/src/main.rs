//! Batch CLI over the klgrowth library: table builds, KL polynomials and
//! mu-coefficients, Ext dimensions and their growth statistics, symmetric
//! power multiplicities, and the rank-one verification suite.
//!
//! Exit codes: 0 success, 1 verification found disagreements, 2 bad
//! arguments or domain errors, 3 truncation-window violations, 4 resource
//! caps. All outputs are deterministic: same inputs give byte-identical
//! stdout regardless of thread count or cache state.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klgrowth::a1::{a1_ext_dim, a1_sum_row, A1Query};
use klgrowth::error::Error;
use klgrowth::ext;
use klgrowth::growth::GrowthSequence;
use klgrowth::kl::{DescentRule, KlTable};
use klgrowth::roots::{RootSystem, RsType, Weight};
use klgrowth::sym;
use klgrowth::weyl::{GroupTable, DEFAULT_MAX_ELEMENTS};

#[derive(Parser)]
#[command(
    name = "klgrowth",
    version,
    about = "Exact Kazhdan-Lusztig combinatorics and Ext-growth statistics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads for parallel table builds (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Smallest,
    Largest,
}

#[derive(Args)]
struct SysArgs {
    /// Root-system type letter, A through G.
    #[arg(long = "type")]
    rtype: String,
    /// Rank.
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    sys: SysArgs,
    /// Work in the affine group (adds the generator s0).
    #[arg(long)]
    affine: bool,
    /// Generate group elements up to this length.
    #[arg(long)]
    max_length: Option<u32>,
    /// Element cap for the group build.
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// KL cache file: loaded before computing when it exists; the kltable
    /// command also saves it after building.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Which descent the KL recursion splits on.
    #[arg(long, value_enum, default_value_t = Rule::Smallest)]
    descent_rule: Rule,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots: index, simple-root coordinates, squared norm, height.
    Roots {
        #[command(flatten)]
        sys: SysArgs,
    },
    /// Group elements up to a length: index, length, word, W+ membership.
    Elements {
        #[command(flatten)]
        table: TableArgs,
    },
    /// One KL polynomial P_{y,x}, as ascending q-coefficients.
    Klpoly {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        y: String,
        #[arg(long)]
        x: String,
    },
    /// Every nonzero P_{y,x} in the table; saves the cache when asked.
    Kltable {
        #[command(flatten)]
        table: TableArgs,
    },
    /// One mu-coefficient.
    Mu {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// One Ext dimension: between simples via --y, or against a costandard
    /// layer via --z.
    Ext {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        x: String,
        #[arg(long, conflicts_with = "z")]
        y: Option<String>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        n: u32,
    },
    /// Nonzero simple-simple Ext dimensions over W+ pairs of bounded length.
    ExtTable {
        #[command(flatten)]
        table: TableArgs,
        /// Length bound on both sides of the pair.
        #[arg(long)]
        length_bound: u32,
        #[arg(long)]
        nmax: u32,
    },
    /// Truncated sum of Ext^n(L(x), L(y)) over y in W+.
    SumNu {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: u32,
        /// Truncation length L; the table must extend to L+2.
        #[arg(long)]
        window: u32,
    },
    /// The coefficient maximum C^[n] over W+ pairs of length at most L.
    Cn {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        window: u32,
    },
    /// The cx and Cx sequences for n up to N with gamma estimates.
    Growth {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        window: u32,
    },
    /// The down-up chain bound on the truncated sum.
    Zigzag {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        window: u32,
    },
    /// Per-row mu sums over W+ with the max row R and the w0 row R'.
    Musums {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        window: u32,
    },
    /// Dominant weights realized by W+: index, word, dot-action image of -2 rho.
    Weights {
        #[command(flatten)]
        table: TableArgs,
        /// Level for the dot action; default: smallest non-exceptional above h.
        #[arg(long)]
        l: Option<i64>,
    },
    /// Witness report for the symmetric-power lower bound.
    Lemma34 {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        n: u32,
    },
    /// Max weight multiplicities of S^n(u*) for n up to N, with gamma.
    Sphi {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        nmax: u32,
    },
    /// Exercise the general engine against the rank-one closed forms.
    VerifyA1 {
        #[arg(long)]
        xmax: u32,
        #[arg(long)]
        nmax: u32,
    },
    /// Which l are exceptional for this system, and the default level.
    Exceptional {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long)]
        lmax: Option<i64>,
    },
}

/// Row-oriented output: CSV prints bare comma-joined rows, JSON prints an
/// array of objects keyed by the column names.
struct Out {
    format: Format,
    cols: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Out {
    fn new(format: Format, cols: &[&'static str]) -> Out {
        Out { format, cols: cols.to_vec(), rows: Vec::new() }
    }

    fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.cols.len());
        self.rows.push(cells);
    }

    fn emit(self) {
        match self.format {
            Format::Csv => {
                for r in self.rows {
                    println!("{}", r.join(","));
                }
            }
            Format::Json => {
                let arr: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        self.cols
                            .iter()
                            .zip(r)
                            .map(|(&c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                            .collect::<serde_json::Map<_, _>>()
                            .into()
                    })
                    .collect();
                println!("{}", serde_json::Value::Array(arr));
            }
        }
    }
}

fn parse_sys(sys: &SysArgs) -> Result<RootSystem, Error> {
    RootSystem::new(RsType::parse(&sys.rtype)?, sys.rank)
}

fn build_table(args: &TableArgs, default_len: u32) -> Result<GroupTable, Error> {
    let rs = parse_sys(&args.sys)?;
    GroupTable::generate(rs, args.affine, args.max_length.unwrap_or(default_len), args.max_elements)
}

fn build_kl(args: &TableArgs, default_len: u32) -> Result<KlTable, Error> {
    let rule = match args.descent_rule {
        Rule::Smallest => DescentRule::SmallestIndex,
        Rule::Largest => DescentRule::LargestIndex,
    };
    let kl = KlTable::new(build_table(args, default_len)?, rule);
    if let Some(path) = &args.cache {
        if path.exists() {
            kl.load_cache(path)?;
        }
    }
    Ok(kl)
}

fn word_len(w: &str) -> u32 {
    w.split_whitespace().filter(|t| *t != "e").count() as u32
}

fn stat_cells(n: u32, s: &ext::TruncatedStat) -> Vec<String> {
    vec![n.to_string(), s.value.to_string(), s.truncation_l.to_string(), s.stabilized.to_string()]
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Roots { sys } => {
            let rs = parse_sys(sys)?;
            let mut out = Out::new(fmt, &["index", "coords", "norm2", "height"]);
            for (i, c) in rs.positive_roots().iter().enumerate() {
                out.row(vec![
                    i.to_string(),
                    join_coords(c),
                    rs.root_norm2(i).to_string(),
                    c.iter().sum::<i64>().to_string(),
                ]);
            }
            out.emit();
        }
        Cmd::Elements { table } => {
            let t = build_table(table, 8)?;
            let mut out = Out::new(fmt, &["index", "length", "word", "wplus"]);
            for i in 0..t.len() as u32 {
                out.row(vec![
                    i.to_string(),
                    t.length(i).to_string(),
                    t.word_string(i),
                    t.is_wplus(i).to_string(),
                ]);
            }
            out.emit();
        }
        Cmd::Klpoly { table, y, x } => {
            let kl = build_kl(table, word_len(x).max(word_len(y)))?;
            let (yi, xi) = (kl.group().parse_word(y)?, kl.group().parse_word(x)?);
            let p = kl.kl(yi, xi);
            match fmt {
                Format::Csv => println!("{}", p.coeff_list()),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"y": kl.group().word_string(yi),
                                       "x": kl.group().word_string(xi),
                                       "coeffs": p.coeff_list()})
                ),
            }
        }
        Cmd::Kltable { table } => {
            let level = table.max_length.ok_or_else(|| {
                Error::BadArgument("kltable needs an explicit --max-length".into())
            })?;
            let kl = build_kl(table, level)?;
            kl.build_to(level)?;
            if let Some(path) = &table.cache {
                kl.save_cache(path)?;
            }
            let mut out = Out::new(fmt, &["y_word", "x_word", "coeffs"]);
            let t = kl.group();
            for x in 0..t.len() as u32 {
                for y in 0..t.len() as u32 {
                    if t.bruhat_leq(y, x) {
                        out.row(vec![
                            t.word_string(y),
                            t.word_string(x),
                            kl.kl(y, x).coeff_list(),
                        ]);
                    }
                }
            }
            out.emit();
        }
        Cmd::Mu { table, x, y } => {
            let kl = build_kl(table, word_len(x).max(word_len(y)))?;
            let (xi, yi) = (kl.group().parse_word(x)?, kl.group().parse_word(y)?);
            println!("{}", kl.mu(xi, yi));
        }
        Cmd::Ext { table, x, y, z, n } => {
            let far = word_len(x).max(y.as_deref().map_or(0, word_len)).max(
                z.as_deref().map_or(0, word_len),
            );
            let kl = build_kl(table, far)?;
            let xi = kl.group().parse_word(x)?;
            let dim = match (y, z) {
                (Some(y), None) => ext::ext_l_l(&kl, xi, kl.group().parse_word(y)?, *n)?,
                (None, Some(z)) => ext::ext_l_nabla(&kl, xi, kl.group().parse_word(z)?, *n)?,
                _ => {
                    return Err(Error::BadArgument(
                        "ext needs exactly one of --y (simple) or --z (costandard layer)".into(),
                    ))
                }
            };
            println!("{dim}");
        }
        Cmd::ExtTable { table, length_bound, nmax } => {
            let kl = build_kl(table, *length_bound)?;
            let t = kl.group();
            let wplus: Vec<u32> =
                t.wplus_indices().into_iter().filter(|&w| t.length(w) <= *length_bound).collect();
            let mut out = Out::new(fmt, &["x_word", "y_word", "n", "dim"]);
            for &x in &wplus {
                for &y in &wplus {
                    for n in 0..=*nmax {
                        let dim = ext::ext_l_l(&kl, x, y, n)?;
                        if dim != 0 {
                            out.row(vec![
                                t.word_string(x),
                                t.word_string(y),
                                n.to_string(),
                                dim.to_string(),
                            ]);
                        }
                    }
                }
            }
            out.emit();
        }
        Cmd::SumNu { table, x, n, window } => {
            let kl = build_kl(table, window + 2)?;
            let xi = kl.group().parse_word(x)?;
            let s = ext::sum_over_nu(&kl, xi, *n, *window)?;
            let mut out = Out::new(fmt, &["n", "value", "L", "stabilized"]);
            out.row(stat_cells(*n, &s));
            out.emit();
        }
        Cmd::Cn { table, n, window } => {
            let kl = build_kl(table, window + 2)?;
            let s = ext::c_n_max(&kl, *n, *window)?;
            let mut out = Out::new(fmt, &["n", "value", "L", "stabilized"]);
            out.row(stat_cells(*n, &s));
            out.emit();
        }
        Cmd::Growth { table, nmax, window } => {
            let kl = build_kl(table, window + 2)?;
            let (cx, cap) = ext::cx_sequences(&kl, *nmax, *window)?;
            let mut out = Out::new(fmt, &["series", "n", "value", "L", "stabilized"]);
            for (name, seq) in [("cx", &cx), ("Cx", &cap)] {
                push_series(&mut out, name, seq);
            }
            out.row(vec![
                "gamma".into(),
                "cx".into(),
                format!("{:.6}", cx.estimated_gamma),
                String::new(),
                String::new(),
            ]);
            out.row(vec![
                "gamma".into(),
                "Cx".into(),
                format!("{:.6}", cap.estimated_gamma),
                String::new(),
                String::new(),
            ]);
            out.emit();
        }
        Cmd::Zigzag { table, x, n, window } => {
            let kl = build_kl(table, window + 2)?;
            let xi = kl.group().parse_word(x)?;
            let s = ext::zigzag_bound(&kl, xi, *n, *window)?;
            let mut out = Out::new(fmt, &["n", "value", "L", "stabilized"]);
            out.row(stat_cells(*n, &s));
            out.emit();
        }
        Cmd::Musums { table, window } => {
            let kl = build_kl(table, window + 2)?;
            let sums = ext::mu_row_sums(&kl, *window)?;
            let mut out = Out::new(fmt, &["row", "value", "L", "stabilized"]);
            for (x, s) in &sums.rows {
                out.row(vec![
                    kl.group().word_string(*x),
                    s.value.to_string(),
                    s.truncation_l.to_string(),
                    s.stabilized.to_string(),
                ]);
            }
            for (name, stat) in
                [("R", &sums.r_estimate), ("Rprime", &sums.rprime_estimate)]
            {
                if let Some(s) = stat {
                    out.row(vec![
                        name.to_string(),
                        s.value.to_string(),
                        s.truncation_l.to_string(),
                        s.stabilized.to_string(),
                    ]);
                }
            }
            out.emit();
        }
        Cmd::Weights { table, l } => {
            let t = build_table(table, 8)?;
            let rs = t.root_system();
            let level = l.unwrap_or_else(|| rs.default_l());
            if rs.is_exceptional(level) {
                return Err(Error::BadArgument(format!(
                    "l = {level} is exceptional for {}",
                    rs.label()
                )));
            }
            let lambda = Weight(vec![-2; rs.rank()]);
            let mut out = Out::new(fmt, &["index", "word", "weight"]);
            for w in t.wplus_indices() {
                let img = rs.dot_action(t.element(w), &lambda, level);
                out.row(vec![w.to_string(), t.word_string(w), join_coords(img.coords())]);
            }
            out.emit();
        }
        Cmd::Lemma34 { sys, n } => {
            let rs = parse_sys(sys)?;
            let w = sym::lemma34_witness(&rs, *n)?;
            match fmt {
                Format::Csv => println!(
                    "{},{},{},{},{},{}",
                    w.n,
                    w.m,
                    join_coords(&w.target),
                    w.count,
                    w.bound,
                    w.distinct
                ),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": w.n, "m": w.m, "target": w.target,
                        "count": w.count, "bound": w.bound, "distinct_ok": w.distinct,
                    })
                ),
            }
        }
        Cmd::Sphi { sys, nmax } => {
            let rs = parse_sys(sys)?;
            let g = sym::s_phi_estimate(&rs, *nmax)?;
            let mut out = Out::new(fmt, &["n", "value"]);
            for (n, v) in g.terms.iter().enumerate() {
                out.row(vec![n.to_string(), v.to_string()]);
            }
            out.row(vec!["gamma".into(), format!("{:.6}", g.estimated_gamma)]);
            out.emit();
        }
        Cmd::VerifyA1 { xmax, nmax } => {
            return verify_a1(*xmax, *nmax);
        }
        Cmd::Exceptional { sys, lmax } => {
            let rs = parse_sys(sys)?;
            let hi = lmax.unwrap_or(rs.coxeter_number() + 7);
            let mut out = Out::new(fmt, &["l", "exceptional"]);
            for l in 2..=hi {
                out.row(vec![l.to_string(), rs.is_exceptional(l).to_string()]);
            }
            out.row(vec!["default_l".into(), rs.default_l().to_string()]);
            out.emit();
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn push_series(out: &mut Out, name: &str, seq: &GrowthSequence) {
    let l = seq.truncation_l.map(|l| l.to_string()).unwrap_or_default();
    let st = seq.stabilized.map(|s| s.to_string()).unwrap_or_default();
    for (n, v) in seq.terms.iter().enumerate() {
        out.row(vec![name.to_string(), n.to_string(), v.to_string(), l.clone(), st.clone()]);
    }
}

fn join_coords(c: &[i64]) -> String {
    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Compare the general (KL-driven) Ext engine with the rank-one closed
/// forms on every pair of lengths up to xmax and degrees up to nmax.
fn verify_a1(xmax: u32, nmax: u32) -> Result<ExitCode, Error> {
    if xmax == 0 {
        return Err(Error::BadArgument("xmax must be at least 1".into()));
    }
    let rs = RootSystem::new(RsType::A, 1)?;
    let table = GroupTable::generate(rs, true, xmax + nmax + 2, DEFAULT_MAX_ELEMENTS)?;
    let kl = KlTable::new(table, DescentRule::SmallestIndex);
    let by_len: Vec<u32> = (1..=xmax)
        .map(|len| {
            kl.group()
                .stratum(len)
                .find(|&i| kl.group().is_wplus(i))
                .expect("one W+ element per positive length")
        })
        .collect();
    let mut bad = 0u64;
    let mut checked = 0u64;
    for x_len in 1..=xmax {
        for y_len in 1..=xmax {
            for n in 0..=nmax {
                let engine =
                    ext::ext_l_l(&kl, by_len[x_len as usize - 1], by_len[y_len as usize - 1], n)?;
                let (oracle, _) = a1_ext_dim(A1Query { x_len, y_len, n });
                checked += 1;
                if engine != oracle as i64 {
                    bad += 1;
                    println!("disagree: X={x_len} Y={y_len} n={n} engine={engine} oracle={oracle}");
                }
            }
        }
        let row_n = nmax.min(2 * xmax);
        for n in 0..=row_n {
            let s = ext::sum_over_nu(&kl, by_len[x_len as usize - 1], n, x_len + n)?;
            checked += 1;
            if !s.stabilized || s.value as u64 != a1_sum_row(x_len, n) {
                bad += 1;
                println!(
                    "disagree: row X={x_len} n={n} engine={} oracle={}",
                    s.value,
                    a1_sum_row(x_len, n)
                );
            }
        }
    }
    println!("checked: {checked}");
    println!("disagreements: {bad}");
    Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
