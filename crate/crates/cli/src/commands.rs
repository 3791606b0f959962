//! Command-line surface and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hardytree::bounds::{
    beta_recursive, check_theorem1_hypotheses, cut_supremum, path_lower_bound,
    residual_weight_norm, sup_product, BoundReport,
};
use hardytree::oracle::forest_norm;
use hardytree::reductions::{
    chain_weights, example1_bound, example1_weights, generate_regular_tree, hat_weights,
    level_weighted_tree, reduce_levels, slowly_varying_check, split_vertex, Example2,
    LevelGrouping, LevelWeights, LogFunction, LogHandle, PsiProfile, SeriesBound, SplitSpec,
    DEFAULT_GRID_CAP,
};
use hardytree::tree::fnv1a;
use hardytree::{
    bennett_constant, enumerate_cuts, hardy_norm_oracle, tree_norm, Cut, Error, Exponent,
    Exponents, NormEstimate, NormOptions, Sequences, VertexId, DEFAULT_CUT_CAP,
};

use crate::report::{num, nums, Report, Settings};
use crate::treefile::{emit_tree_file, parse_tree_file, ParseError, TreeFile};

#[derive(Debug, Parser)]
#[command(name = "hardytree", version, about = "Norms and bounds for weighted summation operators on trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Tree file ("-" for stdin).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Exponent p (decimal, rational like 3/2, or inf); overrides the file header.
    #[arg(long, global = true)]
    pub p: Option<String>,
    #[arg(long, global = true)]
    pub q: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 32)]
    pub starts: usize,
    /// Largest tree (input or generated) a command will work on.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_vertices: usize,
    /// Emit the JSON report instead of the text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Number of series terms summed before the tail estimate.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub tail_cap: usize,
}

impl Default for GlobalArgs {
    fn default() -> Self {
        GlobalArgs {
            input: None,
            p: None,
            q: None,
            seed: 0,
            tol: 1e-9,
            starts: 32,
            max_vertices: 4096,
            json: false,
            tail_cap: 100_000,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Operator norm of the tree in --input.
    Norm,
    /// Norm together with every lower bound and their ratios.
    Bounds {
        /// Base vertex for the path and cut bounds (default: root).
        #[arg(long)]
        xi: Option<usize>,
    },
    /// Enumerate the cuts based at a vertex with their constants.
    Cuts {
        #[arg(long)]
        xi: Option<usize>,
    },
    /// Branching and decay constants of the sup-product bound.
    CheckT1 {
        #[arg(long, default_value_t = 1)]
        l0: usize,
    },
    /// Collapse level bands below a vertex.
    Reduce {
        #[arg(long)]
        xi: Option<usize>,
        /// Cut depths, comma separated, starting at the depth of the base.
        #[arg(long)]
        levels: String,
    },
    /// Replace a vertex by one copy per block of a partition of its children.
    Split {
        #[arg(long)]
        vertex: usize,
        /// Blocks separated by '|', vertices by ',' (e.g. "1,2|3").
        #[arg(long)]
        partition: String,
    },
    /// Reduce a regular tree with level weights to a one-dimensional problem.
    Chainify {
        #[command(flatten)]
        regular: RegularArgs,
    },
    /// Write a regular tree with level weights as a tree file.
    RegularGen {
        #[command(flatten)]
        regular: RegularArgs,
    },
    /// Bennett constant and norm of a one-dimensional problem.
    Hardy1d {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// Series bound for logarithmically modulated geometric weights.
    Example1 {
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        j0: usize,
        #[arg(long, default_value = "const:1")]
        psi_u: LogFunction,
        #[arg(long, default_value = "const:1")]
        psi_w: LogFunction,
        #[arg(long, default_value = "const:1")]
        lambda_star: LogFunction,
        /// Exponent of the slowly varying grid check of the Λ factor.
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },
    /// Bounds for polynomially decaying weights.
    Example2 {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        gamma_star: f64,
        #[arg(long, default_value = "const:1")]
        tau_star: LogFunction,
        #[arg(long)]
        alpha_u: f64,
        #[arg(long)]
        alpha_w: f64,
        #[arg(long, default_value = "const:1")]
        rho_u: LogFunction,
        #[arg(long, default_value = "const:1")]
        rho_w: LogFunction,
        #[arg(long)]
        j0: Option<usize>,
        #[arg(long)]
        k0: Option<usize>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RegularArgs {
    /// Branching factors b_0..b_{N-1}, comma separated.
    #[arg(long)]
    pub branching: String,
    /// Level weights u_0..u_N (default all ones).
    #[arg(long)]
    pub u_levels: Option<String>,
    #[arg(long)]
    pub w_levels: Option<String>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm => "norm",
            Command::Bounds { .. } => "bounds",
            Command::Cuts { .. } => "cuts",
            Command::CheckT1 { .. } => "check-t1",
            Command::Reduce { .. } => "reduce",
            Command::Split { .. } => "split",
            Command::Chainify { .. } => "chainify",
            Command::RegularGen { .. } => "regular-gen",
            Command::Hardy1d { .. } => "hardy1d",
            Command::Example1 { .. } => "example1",
            Command::Example2 { .. } => "example2",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::NoConvergence { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| input_err(format!("--{flag}: '{}' is not valid", t.trim())))
        })
        .collect()
}

fn parse_exponent(flag: &str, s: &str) -> CliResult<Exponent> {
    s.parse()
        .map_err(|e: Error| input_err(format!("--{flag}: {e}")))
}

/// Loads the tree file named by `--input`, applying `--p`/`--q` overrides.
pub fn load_tree(g: &GlobalArgs) -> CliResult<TreeFile> {
    let path = g
        .input
        .as_ref()
        .ok_or_else(|| input_err("this command needs --input"))?;
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| input_err(format!("reading stdin: {e}")))?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("{}: {e}", path.display())))?
    };
    let mut tf = parse_tree_file(&text)
        .map_err(|e: ParseError| input_err(format!("{}: {e}", path.display())))?;
    if let Some(p) = &g.p {
        tf.exponents.p = parse_exponent("p", p)?;
    }
    if let Some(q) = &g.q {
        tf.exponents.q = parse_exponent("q", q)?;
    }
    if tf.tree.len() > g.max_vertices {
        return Err(CliError::Limit(format!(
            "tree has {} vertices, --max-vertices is {}",
            tf.tree.len(),
            g.max_vertices
        )));
    }
    Ok(tf)
}

fn flag_exponents(g: &GlobalArgs) -> CliResult<Exponents> {
    let p = g.p.as_deref().ok_or_else(|| input_err("this command needs --p"))?;
    let q = g.q.as_deref().ok_or_else(|| input_err("this command needs --q"))?;
    Ok(Exponents::new(parse_exponent("p", p)?, parse_exponent("q", q)?))
}

fn norm_options(g: &GlobalArgs) -> NormOptions {
    NormOptions {
        seed: g.seed,
        tol: g.tol,
        starts: g.starts,
        ..NormOptions::default()
    }
}

fn settings(g: &GlobalArgs, e: Option<Exponents>) -> Settings {
    Settings {
        p: e.map(|e| e.p.to_string()),
        q: e.map(|e| e.q.to_string()),
        seed: g.seed,
        tol: g.tol,
        starts: g.starts,
    }
}

fn tree_report(name: &str, g: &GlobalArgs, tf: &TreeFile) -> Report {
    let digest = format!("{:016x}", tf.tree.digest());
    Report::new(name, digest, settings(g, Some(tf.exponents)))
}

fn args_digest(cmd: &Command, g: &GlobalArgs) -> String {
    let key = format!("{cmd:?} {:?} {:?} {}", g.p, g.q, g.tail_cap);
    format!("{:016x}", fnv1a(key.as_bytes()))
}

fn vertex(tf: &TreeFile, label: Option<usize>) -> CliResult<VertexId> {
    match label {
        None => Ok(tf.tree.tree.root()),
        Some(l) => tf
            .vertex(l)
            .ok_or_else(|| input_err(format!("vertex {l} is not in the tree"))),
    }
}

fn labels(tf: &TreeFile, vs: &[VertexId]) -> Value {
    json!(vs.iter().map(|&v| tf.label(v)).collect::<Vec<_>>())
}

fn record_norm(r: &mut Report, name: &str, est: &NormEstimate) {
    r.quantity_with(name, est.value, est.method.as_str(), Some(nums(&est.witness)));
    if !est.converged {
        r.converged = false;
        r.warn(format!("{name}: ascent stopped after {} iterations without meeting the tolerance", est.iterations));
    }
}

fn cut_json(tf: &TreeFile, c: &Cut) -> Value {
    json!({ "d": labels(tf, &c.d_vertices), "gamma": labels(tf, &c.gamma) })
}

fn level_weights(r: &RegularArgs, n: usize) -> CliResult<LevelWeights> {
    let get = |flag: &str, s: &Option<String>| match s {
        Some(s) => parse_list::<f64>(flag, s),
        None => Ok(vec![1.0; n + 1]),
    };
    Ok(LevelWeights::new(get("u-levels", &r.u_levels)?, get("w-levels", &r.w_levels)?)?)
}

fn profile(r: &RegularArgs) -> CliResult<PsiProfile> {
    let b = if r.branching.trim().is_empty() {
        Vec::new()
    } else {
        parse_list::<usize>("branching", &r.branching)?
    };
    Ok(PsiProfile::new(b)?)
}

fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), |v| json!(v))
}

fn series(r: &mut Report, name: &str, s: &SeriesBound, method: &str) {
    r.quantity(name, s.value, method);
    r.detail("argmax_offset", json!(s.argmax));
    r.detail("terms", json!(s.terms));
    match s.remainder {
        Some(rem) => r.quantity("tail_remainder", rem, "power-law-integral"),
        None if !s.divergent => r.warn("tail remainder unknown"),
        None => {}
    }
    if s.divergent {
        r.warn(format!("{name} diverges: the series or supremum does not settle within {} terms", s.terms));
    }
}

/// Runs one command and returns its report.
pub fn run_command(cmd: &Command, g: &GlobalArgs) -> CliResult<Report> {
    let opts = norm_options(g);
    match cmd {
        Command::Norm => {
            let tf = load_tree(g)?;
            let mut r = tree_report("norm", g, &tf);
            let est = tree_norm(&tf.tree, tf.exponents, &opts)?;
            record_norm(&mut r, "norm", &est);
            r.detail("labels", json!(tf.labels));
            r.detail("iterations", json!(est.iterations));
            Ok(r)
        }
        Command::Bounds { xi } => {
            let tf = load_tree(g)?;
            let e = tf.exponents;
            let xi = vertex(&tf, *xi)?;
            let wt = &tf.tree;
            let mut r = tree_report("bounds", g, &tf);
            let est = tree_norm(wt, e, &opts)?;
            record_norm(&mut r, "norm", &est);
            let mut b = BoundReport::new(wt, e, g.seed, g.tol);
            b.insert("norm", est.value, est.method.as_str(), None);
            let sp = sup_product(wt, e.q);
            b.insert("sup_product", sp.value, "sup-over-vertices", Some(tf.label(sp.witness).to_string()));
            if e.p.is_one() || e.p.is_infinite() {
                b.warnings.push("path_lower_bound needs 1 < p < inf; skipped".into());
            } else {
                let pl = path_lower_bound(wt, e, xi)?;
                b.insert("path_lower_bound", pl.value, "path-closed-form", Some(tf.label(pl.witness).to_string()));
            }
            match cut_supremum(wt, e, xi, DEFAULT_CUT_CAP) {
                Ok(cs) => {
                    b.insert("cut_supremum", cs.value, "cut-enumeration", Some(cut_json(&tf, &cs.witness).to_string()));
                    r.detail("cuts_evaluated", json!(cs.cuts_evaluated));
                }
                Err(Error::Regime(_)) => b.warnings.push(
                    "cut_supremum refused: the cut characterization only holds for p <= q".into(),
                ),
                Err(err @ Error::CapExceeded { .. }) => b.warnings.push(format!("cut_supremum skipped: {err}")),
                Err(err) => return Err(err.into()),
            }
            let names: Vec<String> = b.quantities.keys().cloned().collect();
            for (name, entry) in &b.quantities {
                if name == "norm" {
                    continue;
                }
                let witness = entry.witness.as_ref().map(|w| {
                    serde_json::from_str(w).unwrap_or_else(|_| Value::String(w.clone()))
                });
                r.quantity_with(name, entry.value, &entry.method, witness);
            }
            for a in &names {
                for c in &names {
                    if a < c {
                        let ratio = b.get(a).unwrap() / b.get(c).unwrap();
                        r.quantity(&format!("ratio {a}/{c}"), ratio, "quotient");
                    }
                }
            }
            r.warnings.extend(b.warnings);
            Ok(r)
        }
        Command::Cuts { xi } => {
            let tf = load_tree(g)?;
            let e = tf.exponents;
            let xi = vertex(&tf, *xi)?;
            let mut r = tree_report("cuts", g, &tf);
            let cuts = enumerate_cuts(&tf.tree.tree, xi, DEFAULT_CUT_CAP)?;
            let mut best = 0.0f64;
            let mut rows = Vec::with_capacity(cuts.len());
            for c in &cuts {
                let beta = beta_recursive(&tf.tree, e.p, c)?;
                let residual = residual_weight_norm(&tf.tree, e.q, c)?;
                best = best.max(residual / beta);
                rows.push(json!({
                    "d": labels(&tf, &c.d_vertices),
                    "gamma": labels(&tf, &c.gamma),
                    "beta": num(beta),
                    "residual_w_norm": num(residual),
                    "ratio": num(residual / beta),
                }));
            }
            r.quantity("count", cuts.len() as f64, "enumeration");
            r.quantity("max_ratio", best, "enumeration");
            if !e.p_le_q() {
                r.warn("p > q: max_ratio is not a two-sided estimate of the norm");
            }
            r.detail("cuts", Value::Array(rows));
            Ok(r)
        }
        Command::CheckT1 { l0 } => {
            let tf = load_tree(g)?;
            let e = tf.exponents;
            let mut r = tree_report("check-t1", g, &tf);
            let h = check_theorem1_hypotheses(&tf.tree, e.q, *l0)?;
            r.quantity("k", h.k, "max(branching, edge u-ratio)");
            r.quantity("lambda", h.lambda, "max subtree w-norm ratio");
            r.detail("l0", json!(h.l0));
            r.detail("satisfied", json!(h.satisfied));
            let sp = sup_product(&tf.tree, e.q);
            r.quantity_with("sup_product", sp.value, "sup-over-vertices", Some(json!(tf.label(sp.witness))));
            let est = tree_norm(&tf.tree, e, &opts)?;
            record_norm(&mut r, "norm", &est);
            r.quantity("ratio norm/sup_product", est.value / sp.value, "quotient");
            if !h.satisfied {
                r.warn("lambda >= 1: the decay hypothesis fails at this l0");
            }
            Ok(r)
        }
        Command::Reduce { xi, levels } => {
            let tf = load_tree(g)?;
            let e = tf.exponents;
            let base = vertex(&tf, *xi)?;
            let grouping = LevelGrouping::new(base, parse_list("levels", levels)?);
            let red = reduce_levels(&tf.tree, &grouping, e)?;
            let out = TreeFile::with_labels(
                red.tree.clone(),
                e,
                red.origin.iter().map(|&v| tf.label(v)).collect(),
            );
            let mut r = tree_report("reduce", g, &tf);
            let after = tree_norm(&red.tree, e, &opts)?;
            record_norm(&mut r, "norm_reduced", &after);
            if base == tf.tree.tree.root() {
                let before = tree_norm(&tf.tree, e, &opts)?;
                record_norm(&mut r, "norm", &before);
            }
            r.detail("vertices", json!(red.tree.len()));
            r.trees.insert("reduced".into(), emit_tree_file(&out));
            Ok(r)
        }
        Command::Split { vertex: label, partition } => {
            let tf = load_tree(g)?;
            let e = tf.exponents;
            let xi = vertex(&tf, Some(*label))?;
            let blocks = partition
                .split('|')
                .map(|b| {
                    parse_list::<usize>("partition", b)?
                        .into_iter()
                        .map(|l| vertex(&tf, Some(l)))
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            let split = split_vertex(&tf.tree, &SplitSpec::new(xi, blocks), e)?;
            let mut r = tree_report("split", g, &tf);
            let before = tree_norm(&tf.tree, e, &opts)?;
            record_norm(&mut r, "norm", &before);
            let after = forest_norm(&split.forest, e, &opts)?;
            r.quantity("forest_norm", after.value, "block-combination");
            if !after.converged {
                r.converged = false;
                r.warn("forest_norm: some component did not converge");
            }
            // Inside a single tree the extra copies need labels of their own.
            let single = split.forest.components.len() == 1;
            let mut fresh = tf.labels.iter().max().copied().unwrap_or(0) + 1;
            let mut copies = Vec::new();
            for (c, comp) in split.forest.components.iter().enumerate() {
                let mut labs: Vec<usize> = split.origin[c].iter().map(|&v| tf.label(v)).collect();
                for (j, &(cc, v)) in split.copies.iter().enumerate() {
                    if cc != c {
                        continue;
                    }
                    if single && j > 0 {
                        labs[v.0] = fresh;
                        fresh += 1;
                    }
                    copies.push(labs[v.0]);
                }
                r.quantity(&format!("component {c} norm"), after.components[c].value, after.components[c].method.as_str());
                r.trees.insert(format!("component {c}"), emit_tree_file(&TreeFile::with_labels(comp.clone(), e, labs)));
            }
            r.detail("copies", json!(copies));
            Ok(r)
        }
        Command::Chainify { regular } => {
            let e = flag_exponents(g)?;
            let prof = profile(regular)?;
            let lw = level_weights(regular, prof.depth())?;
            let mut r = Report::new("chainify", args_digest(cmd, g), settings(g, Some(e)));
            let (uh, wh) = hat_weights(&lw, &prof, e)?;
            let ch = chain_weights(&lw, &prof, e)?;
            let est = hardy_norm_oracle(&Sequences::new(uh.clone(), wh.clone())?, e, &opts)?;
            record_norm(&mut r, "hat_norm", &est);
            r.detail("u_hat", nums(&uh));
            r.detail("w_hat", nums(&wh));
            r.detail("u_tilde", nums(&ch.u));
            r.detail("w_tilde", nums(&ch.w));
            r.detail("m_star", big(ch.m_star));
            if prof.vertex_count() <= g.max_vertices as u128 {
                let tree = generate_regular_tree(&prof, g.max_vertices)?;
                let wt = level_weighted_tree(tree, &lw)?;
                let t = tree_norm(&wt, e, &opts)?;
                record_norm(&mut r, "tree_norm", &t);
                r.quantity("relative_difference", (t.value - est.value).abs() / est.value, "quotient");
            } else {
                r.warn("regular tree exceeds --max-vertices; tree norm not computed");
            }
            if !(e.p.value() >= e.q.value()) {
                r.warn("p < q: the hat-weight problem is only an estimate, equality needs p >= q");
            }
            Ok(r)
        }
        Command::RegularGen { regular } => {
            let e = flag_exponents(g)?;
            let prof = profile(regular)?;
            let lw = level_weights(regular, prof.depth())?;
            let tree = generate_regular_tree(&prof, g.max_vertices)?;
            let wt = level_weighted_tree(tree, &lw)?;
            let mut r = Report::new("regular-gen", format!("{:016x}", wt.digest()), settings(g, Some(e)));
            r.detail("level_sizes", Value::Array(prof.level_sizes().into_iter().map(big).collect()));
            r.detail("psi", nums(&prof.psi()));
            r.trees.insert("regular".into(), emit_tree_file(&TreeFile::new(wt, e)));
            Ok(r)
        }
        Command::Hardy1d { u, w } => {
            let e = flag_exponents(g)?;
            let s = Sequences::new(parse_list("u", u)?, parse_list("w", w)?)?;
            let mut r = Report::new("hardy1d", args_digest(cmd, g), settings(g, Some(e)));
            let est = hardy_norm_oracle(&s, e, &opts)?;
            record_norm(&mut r, "norm", &est);
            match bennett_constant(&s, e) {
                Ok(m) => {
                    let method = match m.regime {
                        hardytree::hardy1d::BennettRegime::Supremum => "bennett-supremum",
                        hardytree::hardy1d::BennettRegime::Series => "bennett-series",
                    };
                    r.quantity("bennett", m.value, method);
                    r.quantity("last_term", m.last_term, "truncation-diagnostic");
                    r.quantity("ratio norm/bennett", est.value / m.value, "quotient");
                    if let Some(x) = m.series_exponent {
                        r.detail("series_exponent", num(x));
                    }
                }
                Err(err @ Error::Regime(_)) => r.warn(format!("bennett constant skipped: {err}")),
                Err(err) => return Err(err.into()),
            }
            Ok(r)
        }
        Command::Example1 { theta, s, j0, psi_u, psi_w, lambda_star, epsilon } => {
            let q = parse_exponent("q", g.q.as_deref().ok_or_else(|| input_err("this command needs --q"))?)?;
            let mut r = Report::new("example1", args_digest(cmd, g), settings(g, None));
            r.settings.q = Some(q.to_string());
            let m = example1_bound(*j0, q, psi_u, psi_w, lambda_star, *s, g.tail_cap)?;
            series(&mut r, "m_j0", &m, "tail-series-supremum");
            let (u0, w0) = example1_weights(*theta, *s, q, psi_u, psi_w, *j0);
            r.quantity("u_j0", u0, "closed-form");
            r.quantity("w_j0", w0, "closed-form");
            let grid = slowly_varying_check(lambda_star, *epsilon, 20, DEFAULT_GRID_CAP);
            r.quantity("grid_c_upper", grid.c_upper, "grid-2^0..2^20");
            r.quantity("grid_c_lower", grid.c_lower, "grid-2^0..2^20");
            r.detail("grid_passed", json!(grid.passed));
            if !grid.passed {
                r.warn(format!("lambda-star fails the slowly varying grid check at epsilon {epsilon}"));
            }
            Ok(r)
        }
        Command::Example2 { case, gamma_star, tau_star, alpha_u, alpha_w, rho_u, rho_w, j0, k0 } => {
            let e = flag_exponents(g)?;
            let mut r = Report::new("example2", args_digest(cmd, g), settings(g, Some(e)));
            let tau = |x: f64| tau_star.at_log2(x);
            let ru = |x: f64| rho_u.at_log2(x);
            let rw = |x: f64| rho_w.at_log2(x);
            let ex = Example2 {
                gamma_star: *gamma_star,
                alpha_u: *alpha_u,
                alpha_w: *alpha_w,
                tau_star: &tau,
                rho_u: &ru,
                rho_w: &rw,
            };
            match case {
                1 => {
                    let j0 = j0.ok_or_else(|| input_err("case 1 needs --j0"))?;
                    let m = ex.subcritical(j0, e, g.tail_cap)?;
                    series(&mut r, "m_j0", &m, "supremum");
                }
                2 => {
                    let k0 = k0.ok_or_else(|| input_err("case 2 needs --k0"))?;
                    let m = ex.critical(k0, e, g.tail_cap)?;
                    series(&mut r, "m_tilde_k0", &m, "tail-series-supremum");
                }
                other => return Err(input_err(format!("--case must be 1 or 2, got {other}"))),
            }
            Ok(r)
        }
    }
}
