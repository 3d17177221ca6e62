//! Command-line front end for `braidshadow-core`.
//!
//! Exit codes: 0 on success, 1 for domain errors (a failed validation, a
//! subgroup that is not contained in another, an exceeded cap), 2 for usage,
//! parse and IO errors.

pub mod cache;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use braidshadow_core::braidword::{Alphabet, FreeWord};
use braidshadow_core::groupoid::{reduce_shadow, Explorer, Verdict};
use braidshadow_core::nfi::{catalog_search, nfi_equal, NfiSubgroup};
use braidshadow_core::shadows::shadow_source;
use braidshadow_core::{GtShadow, Limits};
use clap::{Args, Parser, Subcommand};

use crate::cache::{cache_key, Cache};
use crate::format::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] braidshadow_core::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use braidshadow_core::Error as E;
        match self {
            CliError::Core(E::InvalidPermutation(_) | E::WordParse { .. }) => 2,
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "braidshadow", version, about = "GT-shadows over finite quotients of B3")]
pub struct Cli {
    /// Write the machine-readable result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[arg(long, global = true, env = "BRAIDSHADOW_CACHE", default_value = ".braidshadow-cache")]
    pub cache_dir: PathBuf,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_group_size: usize,
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub max_candidates: usize,
    /// Largest permutation degree for catalog search.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// A shadow given on the command line.
#[derive(Args, Debug, Clone)]
pub struct ShadowArg {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    /// Word in x, y, X = x⁻¹, Y = y⁻¹; "" or "1" for the empty word.
    #[arg(long, default_value = "")]
    pub f: String,
}

#[derive(Args, Debug, Clone)]
pub struct CatalogArg {
    /// Directory of subgroup files.
    #[arg(long, conflicts_with = "catalog_degree")]
    pub catalog: Option<PathBuf>,
    /// Run catalog search up to this degree instead.
    #[arg(long)]
    pub catalog_degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a subgroup file.
    Validate { file: PathBuf },
    /// Quotient data of a subgroup.
    Info { file: PathBuf },
    /// Enumerate GT(N).
    Shadows { file: PathBuf },
    /// Connected component of N.
    Component { file: PathBuf },
    /// The isolated object N◇.
    Diamond {
        file: PathBuf,
        /// Also save N◇ as a subgroup file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a shadow with target N to H ⊇ N.
    Reduce {
        file: PathBuf,
        coarser: PathBuf,
        #[command(flatten)]
        shadow: ShadowArg,
    },
    /// Does a shadow with target H survive into N ⊆ H?
    Survive {
        target: PathBuf,
        into: PathBuf,
        #[command(flatten)]
        shadow: ShadowArg,
    },
    /// Search a catalog for a certificate that a shadow is fake.
    Genuine {
        file: PathBuf,
        #[command(flatten)]
        shadow: ShadowArg,
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// Enumerate kernels of B3 -> S_n × S3 up to a degree.
    Catalog {
        #[arg(long)]
        degree: usize,
        /// Save every object as a subgroup file in this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Main line diagram and its limit over isolated objects.
    Mainline {
        files: Vec<PathBuf>,
        #[command(flatten)]
        catalog: CatalogArg,
    },
}

/// Runs the CLI on `args`, writing human output to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(&cli),
    };
    match result.and_then(|text| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e))
    }) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

// Stands in for the target label in cached payloads, so that the cache is
// keyed by content alone and relabelling an input never serves stale names.
const TARGET: &str = "@target";

fn relabel(payload: &str, label: &str) -> String {
    let escaped = serde_json::to_string(label).expect("string serialises");
    payload.replace(TARGET, &escaped[1..escaped.len() - 1])
}

struct Ctx<'a> {
    cli: &'a Cli,
    limits: Limits,
    cache: Cache,
}

/// Runs one command and returns its human-readable output.
fn execute(cli: &Cli) -> Result<String, CliError> {
    let limits = Limits {
        max_group_size: cli.max_group_size,
        max_candidates: cli.max_candidates,
        max_catalog_degree: cli.max_degree,
    };
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(Some(cli.cache_dir.clone()))
    };
    let ctx = Ctx { cli, limits, cache };
    match &cli.command {
        Command::Validate { file } => {
            let n = load_subgroup(file, &ctx.limits)?;
            ctx.emit(&InfoDoc::of(&n))?;
            Ok(format!(
                "ok: {} (degree {}, |PB3 : N| = {})\n",
                n.label(),
                n.degree(),
                n.index_pb3()
            ))
        }
        Command::Info { file } => {
            let n = load_subgroup(file, &ctx.limits)?;
            let doc = InfoDoc::of(&n);
            ctx.emit(&doc)?;
            Ok(render_info(&doc))
        }
        Command::Shadows { file } => {
            let n = load_subgroup(file, &ctx.limits)?;
            let doc: ShadowSetDoc = ctx.cached_doc("shadows", &n, || shadow_set_doc(&n, &ctx.limits))?;
            ctx.emit(&doc)?;
            Ok(render_shadow_set(&doc))
        }
        Command::Component { file } => {
            let n = load_subgroup(file, &ctx.limits)?;
            let doc: ComponentDoc = ctx.cached_doc("component", &n, || {
                let mut ex = Explorer::new(ctx.limits);
                let c = ex.connected_component(&n.clone().with_label(TARGET))?;
                Ok(to_json(&ComponentDoc::of(&c)))
            })?;
            ctx.emit(&doc)?;
            Ok(render_component(&doc))
        }
        Command::Diamond { file, out: dest } => {
            let n = load_subgroup(file, &ctx.limits)?;
            let mut ex = Explorer::new(ctx.limits);
            let d = ex.diamond(&n)?;
            let doc = SubgroupFile::of(&d);
            ctx.emit(&doc)?;
            if let Some(p) = dest {
                save_subgroup(p, &d)?;
            }
            Ok(format!(
                "{}: degree {}, |PB3 : N◇| = {}, N_ord = {}, isolated\n",
                d.label(),
                d.degree(),
                d.index_pb3(),
                d.n_ord()
            ))
        }
        Command::Reduce { file, coarser, shadow } => {
            let n = load_subgroup(file, &ctx.limits)?;
            let h = load_subgroup(coarser, &ctx.limits)?;
            let s = parse_shadow(&n, shadow, &ctx.limits)?;
            let r = reduce_shadow(&s, &h, &ctx.limits)?;
            let doc = ShadowSetDoc {
                target: h.label().to_string(),
                n_ord: h.n_ord(),
                shadows: vec![ShadowDoc::of(&r, &source_label(&r, &ctx.limits)?)],
            };
            ctx.emit(&doc)?;
            Ok(format!("{} on {}  ->  {} on {}\n", s, n.label(), r, h.label()))
        }
        Command::Survive { target, into, shadow } => {
            let h = load_subgroup(target, &ctx.limits)?;
            let n = load_subgroup(into, &ctx.limits)?;
            let s = parse_shadow(&h, shadow, &ctx.limits)?;
            let mut ex = Explorer::new(ctx.limits);
            let survives = ex.survives(&s, &n)?;
            let doc = SurviveDoc {
                shadow: ShadowDoc::of(&s, ""),
                target: h.label().to_string(),
                into: n.label().to_string(),
                survives,
            };
            ctx.emit(&doc)?;
            let verb = if survives { "survives" } else { "does not survive" };
            Ok(format!("{} on {} {} into {}\n", s, h.label(), verb, n.label()))
        }
        Command::Genuine { file, shadow, catalog } => {
            let h = load_subgroup(file, &ctx.limits)?;
            let s = parse_shadow(&h, shadow, &ctx.limits)?;
            let cat = ctx.catalog(catalog)?;
            let mut ex = Explorer::new(ctx.limits);
            let v = ex.genuine_to_depth(&s, &cat)?;
            let doc = VerdictDoc::of(&s, &v);
            ctx.emit(&doc)?;
            match &v {
                Verdict::Fake(c) => Ok(format!(
                    "fake: {} on {} does not survive into {} (reduced image has {} elements)\n",
                    s,
                    h.label(),
                    c.witness.label(),
                    c.reduced_image.len()
                )),
                Verdict::NotFakeToDepth(checked) => Ok(format!(
                    "not fake to depth: {} on {} survives into all {} catalog objects below it\n",
                    s,
                    h.label(),
                    checked.len()
                )),
            }
        }
        Command::Catalog { degree, out: dest } => {
            let key = cache_key("catalog", &[], &[("degree", degree.to_string())]);
            let payload = ctx
                .cache
                .get_or_compute(&key, || Ok(to_json(&catalog_doc(*degree, &ctx.limits)?)))?;
            let doc: CatalogDoc = parse_json(&payload, Path::new("<cache>"))?;
            if let Some(dir) = dest {
                for o in &doc.objects {
                    let f = SubgroupFile {
                        schema: SCHEMA,
                        label: o.label.clone(),
                        degree: o.degree,
                        sigma1: o.sigma1.clone(),
                        sigma2: o.sigma2.clone(),
                    };
                    write_atomic(&dir.join(format!("{}.json", o.label)), to_json(&f).as_bytes())?;
                }
            }
            ctx.emit_raw(&payload)?;
            Ok(render_catalog(&doc))
        }
        Command::Mainline { files, catalog } => {
            let mut objs = Vec::new();
            for f in files {
                objs.push(load_subgroup(f, &ctx.limits)?);
            }
            let mut ex = Explorer::new(ctx.limits);
            if catalog.catalog.is_some() || catalog.catalog_degree.is_some() {
                for n in ctx.catalog(catalog)? {
                    if ex.is_isolated(&n)? {
                        objs.push(n);
                    }
                }
            }
            if objs.is_empty() {
                return Err(CliError::Usage("mainline needs subgroup files or a catalog".into()));
            }
            let ml = ex.main_line_limit(&objs)?;
            let doc = MainLineDoc::of(&ml);
            ctx.emit(&doc)?;
            Ok(render_mainline(&doc))
        }
    }
}

impl Ctx<'_> {
    fn emit<T: serde::Serialize>(&self, doc: &T) -> Result<(), CliError> {
        self.emit_raw(&to_json(doc))
    }

    fn emit_raw(&self, text: &str) -> Result<(), CliError> {
        match &self.cli.json {
            Some(p) => write_atomic(p, text.as_bytes()),
            None => Ok(()),
        }
    }

    /// Label-free payload from the cache or `compute`, then relabelled.
    fn cached_doc<T: serde::de::DeserializeOwned>(
        &self,
        command: &str,
        n: &NfiSubgroup,
        compute: impl FnOnce() -> Result<String, CliError>,
    ) -> Result<T, CliError> {
        let params = [
            ("max_group_size", self.limits.max_group_size.to_string()),
            ("max_candidates", self.limits.max_candidates.to_string()),
        ];
        let key = cache_key(command, &[n.content_id()], &params);
        let payload = self.cache.get_or_compute(&key, compute)?;
        parse_json(&relabel(&payload, n.label()), Path::new("<cache>"))
    }

    fn catalog(&self, arg: &CatalogArg) -> Result<Vec<NfiSubgroup>, CliError> {
        match (&arg.catalog, arg.catalog_degree) {
            (Some(dir), _) => load_catalog_dir(dir, &self.limits),
            (None, Some(d)) => Ok(catalog_search(d, &self.limits)?),
            (None, None) => Err(CliError::Usage("give --catalog DIR or --catalog-degree D".into())),
        }
    }
}

fn parse_shadow(n: &NfiSubgroup, arg: &ShadowArg, limits: &Limits) -> Result<GtShadow, CliError> {
    let text = if arg.f == "1" { "" } else { arg.f.as_str() };
    let f = FreeWord::parse(Alphabet::F2, text)?;
    Ok(GtShadow::new(n, arg.m, f, limits)?)
}

fn source_label(s: &GtShadow, limits: &Limits) -> Result<String, CliError> {
    let k = shadow_source(s, limits)?;
    Ok(if nfi_equal(k, s.target(), limits)? {
        s.target().label().to_string()
    } else {
        k.label().to_string()
    })
}

fn shadow_set_doc(n: &NfiSubgroup, limits: &Limits) -> Result<String, CliError> {
    let n = n.clone().with_label(TARGET);
    let mut ex = Explorer::new(*limits);
    let all = ex.shadows(&n)?;
    let mut shadows = Vec::with_capacity(all.len());
    for s in all.iter() {
        shadows.push(ShadowDoc::of(s, &source_label(s, limits)?));
    }
    Ok(to_json(&ShadowSetDoc {
        target: TARGET.into(),
        n_ord: n.n_ord(),
        shadows,
    }))
}

fn catalog_doc(degree: usize, limits: &Limits) -> Result<CatalogDoc, CliError> {
    let cat = catalog_search(degree, limits)?;
    let mut ex = Explorer::new(*limits);
    let mut objects = Vec::with_capacity(cat.len());
    for n in &cat {
        let count = ex.shadows(n)?.len();
        objects.push(ObjectDoc::of(n, count, ex.is_isolated(n)?));
    }
    Ok(CatalogDoc {
        schema: SCHEMA,
        max_degree: degree,
        objects,
    })
}

fn shadow_cell(s: &ShadowDoc) -> String {
    if s.f.is_empty() {
        "1".into()
    } else {
        s.f.clone()
    }
}

fn render_info(d: &InfoDoc) -> String {
    format!(
        "label: {}\ncontent_id: {}\ndegree: {}\nN_ord={}\n|B3/N|={}\n|PB3:N|={}\n|F2:N_F2|={}\n|[F2/N_F2,F2/N_F2]|={}\n",
        d.label, d.content_id, d.degree, d.n_ord, d.b3_order, d.index_pb3, d.index_f2, d.commutator_order
    )
}

fn render_shadow_set(d: &ShadowSetDoc) -> String {
    let mut s = format!("GT({}): {} shadows, N_ord={}\n", d.target, d.shadows.len(), d.n_ord);
    s.push_str(&format!("{:>6}  {:<40}  source\n", "m", "f"));
    for x in &d.shadows {
        s.push_str(&format!("{:>6}  {:<40}  {}\n", x.m, shadow_cell(x), x.source_label));
    }
    s
}

fn render_component(d: &ComponentDoc) -> String {
    let total: usize = d.morphisms.iter().map(|m| m.shadows.len()).sum();
    let mut s = format!(
        "component of {}: {} objects, {} morphisms, {}\n",
        d.root,
        d.objects.len(),
        total,
        if d.isolated { "isolated" } else { "not isolated" }
    );
    for o in &d.objects {
        s.push_str(&format!(
            "  {}  degree {}  |PB3:N|={}  N_ord={}  |GT|={}\n",
            o.label, o.degree, o.index_pb3, o.n_ord, o.gt_count
        ));
    }
    for m in &d.morphisms {
        s.push_str(&format!("  {} -> {}: {}\n", m.source, m.target, m.shadows.len()));
    }
    s.push_str(&format!("  diamond: degree {}\n", d.diamond.degree));
    s
}

fn render_catalog(d: &CatalogDoc) -> String {
    let mut s = format!("catalog up to degree {}: {} kernels\n", d.max_degree, d.objects.len());
    s.push_str(&format!(
        "{:<6} {:>6} {:>9} {:>9} {:>6} {:>6} {:>8}\n",
        "label", "degree", "|PB3:N|", "|F2:NF2|", "N_ord", "|GT|", "isolated"
    ));
    for o in &d.objects {
        s.push_str(&format!(
            "{:<6} {:>6} {:>9} {:>9} {:>6} {:>6} {:>8}\n",
            o.label, o.degree, o.index_pb3, o.index_f2, o.n_ord, o.gt_count, o.isolated
        ));
    }
    s
}

fn render_mainline(d: &MainLineDoc) -> String {
    let mut s = format!("main line over {} objects, {} edges\n", d.objects.len(), d.edges.len());
    for g in &d.groups {
        s.push_str(&format!("  |GT({})| = {}\n", g.target, g.shadows.len()));
    }
    for e in &d.edges {
        s.push_str(&format!("  {} -> {}\n", e.finer, e.coarser));
    }
    s.push_str(&format!("limit: {} elements\n", d.limit_size));
    s
}
