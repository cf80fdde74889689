//! Argument parsing, input loading and dispatch for the `localic` binary.
//!
//! `run` never exits the process: it returns the exit code and the rendered
//! output, so the tests can drive it in-process.

use clap::{Args, Parser, Subcommand};
use localic::category::{build_tbg_site, verify_atomic_site, FunctorData, FunctorJson, SiteCategory};
use localic::enrichment::{nat_points, verify_lifting, verify_transitivity, yoneda_auto_verify, yoneda_verify, NatLocale};
use localic::error::Error;
use localic::galois::{
    c_a_subcategory, galois_closure, galois_cofinality, is_galois, subgroup_from, verify_fundamental_discrete, verify_split_eq,
};
use localic::group::{ElemSet, FiniteGroup, GroupJson};
use localic::gset::GSet;
use localic::locale::{enumerate_points, EngineChoice, EngineConfig, Site, SiteJson};
use localic::prodiscrete::{colimit_site, factor_transitive, verify_chain, ChainJson, GroupChain};
use localic::report::{Report, Verdict};
use localic::sample::{sample_categories, SampleBounds};
use localic::wraith::{verify_groupoid_laws, Kind, WraithSite};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "localic", version, about = "Finite checks for locales, group actions and Galois objects")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Entailment engine: full, lazy or auto.
    #[arg(long, global = true, default_value = "auto")]
    pub engine: String,
    /// Node expansions per lazy query.
    #[arg(long, global = true, default_value_t = localic::locale::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest group order for which tBG is built.
    #[arg(long, global = true, default_value_t = 24)]
    pub max_group_order: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Add wall time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load and describe a group.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Orbits of a finite G-set.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Atomic-site axioms.
    #[command(subcommand)]
    Site(SiteCmd),
    /// Points and structure maps of locales of relations.
    #[command(subcommand)]
    Locale(LocaleCmd),
    /// Galois objects, closures and split categories.
    #[command(subcommand)]
    Galois(GaloisCmd),
    /// Towers of groups with surjective transitions.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Localic Yoneda isomorphisms.
    #[command(subcommand)]
    Yoneda(YonedaCmd),
    /// Locales of natural transformations.
    #[command(subcommand)]
    Enrich(EnrichCmd),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Built-in name (Z4, S3, D4, Q8, A4, Z2xZ2, ...) or a group JSON file.
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Validate a group and list its subgroup classes.
    Define {
        #[command(flatten)]
        g: GroupArg,
        /// Print the canonical group JSON instead of a report.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GsetCmd {
    /// Orbits and stabilizers.
    Orbits {
        #[command(flatten)]
        g: GroupArg,
        /// Coset space G/H, H given by comma-separated generators; repeat for a sum.
        #[arg(long)]
        subgroup: Vec<String>,
        /// G-set JSON file: {"group": ..., "points": n, "generators": [["(1 2)", [1, 0, 2]], ...]}.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SiteCmd {
    /// Check the atomic-site axioms on tBG or on a functor file.
    VerifyAtomic {
        #[arg(long)]
        group: Option<String>,
        /// Functor JSON: {"category": ..., "values": [...], "arrow_maps": [...]}.
        #[arg(long)]
        functor: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LocaleCmd {
    /// Enumerate the points of a locale of relations, or of a site file.
    Points {
        #[arg(long, default_value = "rel")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        x: usize,
        #[arg(long, default_value_t = 2)]
        y: usize,
        /// Site JSON file; overrides --kind/--x/--y.
        #[arg(long)]
        site: Option<PathBuf>,
    },
    /// Groupoid laws of the structure maps as frame equalities.
    VerifyLaws {
        #[arg(long, default_value = "bij")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        x: usize,
        #[arg(long, default_value_t = 2)]
        y: usize,
        #[arg(long, default_value_t = 2)]
        z: usize,
        /// Use a deliberately wrong multiplication (negative control).
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GaloisCmd {
    /// Is G/H Galois?
    Check {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long, default_value = "1")]
        subgroup: String,
    },
    /// Galois closure of G/H.
    Closure {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long, default_value = "1")]
        subgroup: String,
    },
    /// Split(U) for a cover U, a sum of coset spaces G/H (repeat --cover).
    Split {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long, required = true)]
        cover: Vec<String>,
    },
    /// The fundamental theorem on the subsite of a Galois object G/N.
    Fundamental {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long, default_value = "1")]
        subgroup: String,
    },
    /// Every connected object is covered by a Galois one.
    Cofinality {
        #[command(flatten)]
        g: GroupArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ChainArg {
    /// Chain JSON file: {"stages": [group, ...], "transitions": [[...], ...]}.
    #[arg(long)]
    pub chain: Option<PathBuf>,
    /// Cyclic tower such as 2,4,8.
    #[arg(long, value_delimiter = ',')]
    pub cyclic: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ChainCmd {
    /// The least stage through which a transitive top-stage action factors.
    Factor {
        #[command(flatten)]
        c: ChainArg,
        /// Factor G/H only; by default every transitive object.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Germ classes and the colimit site.
    ColimitSite {
        #[command(flatten)]
        c: ChainArg,
    },
    /// All chain checks.
    Verify {
        #[command(flatten)]
        c: ChainArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FunctorArg {
    /// Use tBG with its underlying-set functor.
    #[arg(long)]
    pub group: Option<String>,
    /// Functor JSON file.
    #[arg(long)]
    pub functor: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum YonedaCmd {
    /// φ and λ are inverse frame maps, for F and for the representables.
    Verify {
        #[command(flatten)]
        f: FunctorArg,
        /// Restrict to one object (by name).
        #[arg(long)]
        object: Option<String>,
        /// With no group or functor, check this many sampled categories.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnrichCmd {
    /// Points of lRel/lFunc/lBij(F, G).
    Points {
        #[command(flatten)]
        f: FunctorArg,
        /// Second functor file; defaults to F.
        #[arg(long)]
        to: Option<PathBuf>,
        #[arg(long, default_value = "bij")]
        kind: String,
    },
    /// Every generator of lAut(F) is non-zero.
    Transitivity {
        #[command(flatten)]
        f: FunctorArg,
    },
    /// Frame order on lFix generators matches arrows of the site.
    Lifting {
        #[command(flatten)]
        f: FunctorArg,
    },
}

/// A G-set given by the images of a few group elements.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: GroupJson,
    pub points: usize,
    pub generators: Vec<(String, Vec<usize>)>,
}

/// Failures that end the run without a report, with exit code 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

/// Well-formed input that does not meet a verifier's precondition is a
/// failed check, not a usage error.
enum Failure {
    Input(String),
    Precondition(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e.0.strip_prefix("precondition failed: ") {
            Some(rest) => Failure::Precondition(rest.to_string()),
            None => Failure::Input(e.0),
        }
    }
}

type Res<T> = Result<T, InputError>;

pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome { code, output: e.render().to_string() };
        }
    };
    let mut ctx = Ctx { global: cli.global.clone(), digest: Sha256::new() };
    for a in args.iter().skip(1) {
        ctx.digest.update(a.to_string_lossy().as_bytes());
        ctx.digest.update([0]);
    }
    let start = Instant::now();
    let result = dispatch(&cli.command, &mut ctx).map_err(Failure::from);
    let result = match result {
        Err(Failure::Precondition(why)) => {
            let mut r = Report::new(command_name(&args));
            r.check("precondition", Verdict::Fail, why);
            Ok(Output::Report(r))
        }
        Err(Failure::Input(msg)) => Err(InputError(msg)),
        Ok(o) => Ok(o),
    };
    match result {
        Ok(Output::Raw(text)) => Outcome { code: 0, output: text },
        Ok(Output::Report(mut r)) => {
            let d = std::mem::take(&mut ctx.digest).finalize();
            r.inputs_digest = format!("sha256:{}", hex16(&d));
            if ctx.global.timing {
                r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let output = if ctx.global.json {
                serde_json::to_string_pretty(&r).expect("reports serialize") + "\n"
            } else {
                r.to_text()
            };
            Outcome { code: r.exit_code(), output }
        }
        Err(InputError(msg)) => Outcome { code: 1, output: format!("error: {msg}\n") },
    }
}

fn command_name(args: &[std::ffi::OsString]) -> String {
    args.iter().skip(1).map(|a| a.to_string_lossy()).take_while(|a| !a.starts_with('-')).collect::<Vec<_>>().join(" ")
}

fn hex16(d: &[u8]) -> String {
    d.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Ctx {
    global: Global,
    digest: Sha256,
}

enum Output {
    Report(Report),
    Raw(String),
}

impl Ctx {
    fn engine(&self) -> Res<EngineConfig> {
        let choice: EngineChoice = self.global.engine.parse()?;
        Ok(EngineConfig { choice, budget: self.global.budget, ..Default::default() })
    }

    fn read(&mut self, path: &Path) -> Res<String> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    fn parse<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Res<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| InputError(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))
    }

    fn group(&mut self, spec: &str) -> Res<Arc<FiniteGroup>> {
        let path = Path::new(spec);
        if spec.ends_with(".json") || path.is_file() {
            let doc: GroupJson = self.parse(path)?;
            let g = FiniteGroup::from_json(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            return Ok(Arc::new(g));
        }
        Ok(Arc::new(FiniteGroup::builtin(spec)?))
    }

    fn tbg(&mut self, spec: &str) -> Res<SiteCategory> {
        let g = self.group(spec)?;
        Ok(build_tbg_site(&g, self.global.max_group_order)?)
    }

    fn functor(&mut self, path: &Path) -> Res<SiteCategory> {
        let doc: FunctorJson = self.parse(path)?;
        let (cat, f) = FunctorData::from_json(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        Ok(SiteCategory::abstract_site(cat, f)?)
    }

    fn site_of(&mut self, f: &FunctorArg) -> Res<SiteCategory> {
        match (&f.group, &f.functor) {
            (Some(g), None) => self.tbg(g),
            (None, Some(p)) => self.functor(p),
            _ => Err(InputError("give exactly one of --group or --functor".into())),
        }
    }

    fn chain(&mut self, c: &ChainArg) -> Res<GroupChain> {
        match (&c.chain, c.cyclic.is_empty()) {
            (Some(p), true) => {
                let doc: ChainJson = self.parse(p)?;
                GroupChain::from_json(&doc).map_err(|e| InputError(format!("{}: {e}", p.display())))
            }
            (None, false) => Ok(GroupChain::cyclic(&c.cyclic)?),
            _ => Err(InputError("give exactly one of --chain or --cyclic".into())),
        }
    }
}

/// `"(1 2),(1 2 3)"` names the subgroup generated by the listed elements;
/// `"1"` or an empty string is the trivial subgroup.
pub fn parse_subgroup(group: &FiniteGroup, spec: &str) -> Res<ElemSet> {
    let gens: Vec<String> =
        spec.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "1").map(String::from).collect();
    Ok(subgroup_from(group, &gens)?)
}

fn cosets(group: &Arc<FiniteGroup>, spec: &str) -> Res<GSet> {
    let h = parse_subgroup(group, spec)?;
    Ok(GSet::cosets(group.clone(), h)?)
}

fn gset_from_json(doc: &GSetJson) -> Res<GSet> {
    let group = Arc::new(FiniteGroup::from_json(&doc.group)?);
    let n = doc.points;
    let mut act: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    act[group.identity()] = Some((0..n).collect());
    let mut gens = Vec::new();
    for (i, (name, img)) in doc.generators.iter().enumerate() {
        let g = group.parse_element(name).map_err(|e| InputError(format!("generators[{i}]: {e}")))?;
        if img.len() != n || !localic::gset::is_bijective(img, n) {
            return Err(InputError(format!("generators[{i}]: not a permutation of {n} points")));
        }
        gens.push((g, img.clone()));
    }
    // Breadth-first over words: s·g acts as img(s) after act(g).
    let mut queue = vec![group.identity()];
    while let Some(g) = queue.pop() {
        let ag = act[g].clone().expect("queued elements are assigned");
        for (s, img) in &gens {
            let sg = group.mul(*s, g);
            if act[sg].is_none() {
                act[sg] = Some(ag.iter().map(|&x| img[x]).collect());
                queue.push(sg);
            }
        }
    }
    if let Some(g) = act.iter().position(Option::is_none) {
        return Err(InputError(format!("generators do not generate the group: {} is unreachable", group.label(g))));
    }
    let act = act.into_iter().map(|a| a.expect("all assigned")).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    GSet::new(group, "X", act, labels).map_err(|e| InputError(format!("generators: {e}")))
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Res<Output> {
    let report = match cmd {
        Command::Group(GroupCmd::Define { g, emit }) => {
            let group = ctx.group(&g.group)?;
            if *emit {
                return Ok(Output::Raw(serde_json::to_string_pretty(&group.to_json()).expect("serializes") + "\n"));
            }
            group_report(&group)?
        }
        Command::Gset(GsetCmd::Orbits { g, subgroup, file }) => {
            let x = match file {
                Some(p) => {
                    let doc: GSetJson = ctx.parse(p)?;
                    gset_from_json(&doc)?
                }
                None => {
                    let group = ctx.group(&g.group)?;
                    if subgroup.is_empty() {
                        GSet::natural(group)?
                    } else {
                        let mut parts = subgroup.iter().map(|s| cosets(&group, s));
                        let first = parts.next().expect("non-empty")?;
                        parts.try_fold(first, |acc, p| Ok::<_, InputError>(acc.sum(&p?)?))?
                    }
                }
            };
            orbit_report(&x)
        }
        Command::Site(SiteCmd::VerifyAtomic { group, functor }) => {
            let site = ctx.site_of(&FunctorArg { group: group.clone(), functor: functor.clone() })?;
            verify_atomic_site(&site)
        }
        Command::Locale(LocaleCmd::Points { kind, x, y, site }) => match site {
            Some(p) => {
                let doc: SiteJson = ctx.parse(p)?;
                let (s, _) = Site::from_json(&doc).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
                site_points_report(&s)?
            }
            None => wraith_points_report(kind.parse()?, *x, *y)?,
        },
        Command::Locale(LocaleCmd::VerifyLaws { kind, x, y, z, corrupt }) => {
            verify_groupoid_laws(kind.parse()?, *x, *y, *z, &ctx.engine()?, *corrupt)?
        }
        Command::Galois(GaloisCmd::Check { g, subgroup }) => {
            let group = ctx.group(&g.group)?;
            check_report(&cosets(&group, subgroup)?)?
        }
        Command::Galois(GaloisCmd::Closure { g, subgroup }) => {
            let group = ctx.group(&g.group)?;
            closure_report(&cosets(&group, subgroup)?)?
        }
        Command::Galois(GaloisCmd::Split { g, cover }) => {
            let group = ctx.group(&g.group)?;
            let mut parts = cover.iter().map(|s| cosets(&group, s));
            let first = parts.next().expect("clap requires one")?;
            let u = parts.try_fold(first, |acc, p| Ok::<_, InputError>(acc.sum(&p?)?))?;
            verify_split_eq(&u, ctx.global.max_group_order)?
        }
        Command::Galois(GaloisCmd::Fundamental { g, subgroup }) => {
            let group = ctx.group(&g.group)?;
            let a = cosets(&group, subgroup)?;
            let site = build_tbg_site(&group, ctx.global.max_group_order)?;
            let (ca, mut r) = c_a_subcategory(&a, 0, &site)?;
            r.absorb(verify_fundamental_discrete(&ca)?);
            r
        }
        Command::Galois(GaloisCmd::Cofinality { g }) => {
            let group = ctx.group(&g.group)?;
            galois_cofinality(&group, ctx.global.max_group_order)?
        }
        Command::Chain(ChainCmd::Factor { c, subgroup }) => {
            let chain = ctx.chain(c)?;
            factor_report(&chain, subgroup.as_deref())?
        }
        Command::Chain(ChainCmd::ColimitSite { c }) => {
            let chain = ctx.chain(c)?;
            let colim = colimit_site(&chain)?;
            let mut r = colim.verify()?;
            for (k, name) in colim.site.category.objects().iter().enumerate() {
                let members = colim.class_of.iter().filter(|&&c| c == k).count();
                r.note(format!("class {k}: {name} ({members} germs)"));
            }
            r
        }
        Command::Chain(ChainCmd::Verify { c }) => {
            let chain = ctx.chain(c)?;
            verify_chain(&chain)?
        }
        Command::Yoneda(YonedaCmd::Verify { f, object, samples }) => yoneda_report(ctx, f, object.as_deref(), *samples)?,
        Command::Enrich(EnrichCmd::Points { f, to, kind }) => {
            let site = ctx.site_of(f)?;
            let g = match to {
                Some(p) => {
                    let other = ctx.functor(p)?;
                    if !other.category.same_shape(&site.category) {
                        return Err(InputError(format!("{}: not a functor on the same category", p.display())));
                    }
                    other.functor
                }
                None => site.functor.clone(),
            };
            let nat = NatLocale::new(kind.parse()?, &site.category, &site.functor, &g)?;
            let (points, r) = nat_points(&nat)?;
            let mut r = r;
            for p in points.iter().take(24) {
                r.note(nat.site.describe(p));
            }
            if points.len() > 24 {
                r.note(format!("... {} more", points.len() - 24));
            }
            r
        }
        Command::Enrich(EnrichCmd::Transitivity { f }) => {
            let site = ctx.site_of(f)?;
            verify_transitivity(&site, &ctx.engine()?)?
        }
        Command::Enrich(EnrichCmd::Lifting { f }) => {
            let site = ctx.site_of(f)?;
            verify_lifting(&site, &ctx.engine()?)?
        }
    };
    Ok(Output::Report(report))
}

fn group_report(g: &Arc<FiniteGroup>) -> Res<Report> {
    let mut r = Report::new(format!("group {}", g.name()));
    r.engine = "exhaustive".into();
    let e = g.identity();
    let n = g.order();
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))));
    r.check("associative", assoc, "");
    r.check("identity and inverses", (0..n).all(|a| g.mul(a, e) == a && g.mul(a, g.inv(a)) == e), "");
    r.note(format!("order {n}"));
    for class in g.subgroup_classes()? {
        let h = class[0];
        let kind = if g.is_normal(h) { "normal" } else { "not normal" };
        r.note(format!("{} (order {}, {} conjugates, {kind})", g.describe_subgroup(h), h.count_ones(), class.len()));
    }
    Ok(r)
}

fn orbit_report(x: &GSet) -> Report {
    let g = x.group();
    let mut r = Report::new(format!("orbits of {} under {}", x.name(), g.name()));
    r.engine = "exhaustive".into();
    let orbits = x.orbits();
    let mut bad = String::new();
    for o in &orbits {
        let stab = x.stabilizer(o[0]);
        if o.len() * stab.count_ones() as usize != g.order() && bad.is_empty() {
            bad = format!("orbit of {}", x.label(o[0]));
        }
        let pts: Vec<&str> = o.iter().map(|&p| x.label(p)).collect();
        r.note(format!("{{{}}} stabilizer {}", pts.join(", "), g.describe_subgroup(stab)));
    }
    r.check("|orbit| * |stabilizer| = |G|", bad.is_empty(), bad);
    r.note(format!("{} orbits on {} points", orbits.len(), x.len()));
    r
}

fn wraith_points_report(kind: Kind, nx: usize, ny: usize) -> Res<Report> {
    let w = WraithSite::sized(kind, nx, ny);
    let points = enumerate_points(&w.site)?;
    let mut r = Report::new(format!("points of {} on {nx} x {ny}", kind_name(kind)));
    r.engine = "point search".into();
    let decodes = points.iter().all(|p| {
        let rel = w.relation_of(p);
        let fwd = |x: usize| rel.iter().filter(|&&(a, _)| a == x).count();
        let back = |y: usize| rel.iter().filter(|&&(_, b)| b == y).count();
        match kind {
            Kind::Relations => true,
            Kind::Functions => (0..nx).all(|x| fwd(x) == 1),
            Kind::Bijections => (0..nx).all(|x| fwd(x) == 1) && (0..ny).all(|y| back(y) == 1),
        }
    });
    r.check(format!("every point is a {}", kind_singular(kind)), decodes, "");
    r.note(format!("{} points", points.len()));
    for p in points.iter().take(24) {
        r.note(w.site.describe(p));
    }
    Ok(r)
}

fn site_points_report(s: &Site) -> Res<Report> {
    let points = enumerate_points(s)?;
    let mut r = Report::new(format!("points of a site on {} generators", s.generator_count()));
    r.engine = "point search".into();
    let up = points.iter().all(|p| p.iter().all(|i| (0..s.generator_count()).all(|j| !s.base().leq(i, j) || p.contains(j))));
    r.check("points are up-closed", up, "");
    r.note(format!("{} points", points.len()));
    for p in points.iter().take(24) {
        r.note(s.describe(p));
    }
    Ok(r)
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Relations => "lRel",
        Kind::Functions => "lFunc",
        Kind::Bijections => "lBij",
    }
}

fn kind_singular(kind: Kind) -> &'static str {
    match kind {
        Kind::Relations => "relation",
        Kind::Functions => "function",
        Kind::Bijections => "bijection",
    }
}

fn check_report(x: &GSet) -> Res<Report> {
    let c = is_galois(x)?;
    let mut r = Report::new(format!("is {} Galois", x.name()));
    r.engine = "exhaustive".into();
    r.check("torsor map and A* agree", c.torsor_bijective == c.astar_bijective, "");
    r.check("Galois iff |Aut| = |X| for connected X", !x.is_transitive() || c.is_galois == (c.automorphisms.len() == x.len()), "");
    if c.is_galois {
        r.note(format!("Galois: |Aut| = {} acts simply transitively", c.automorphisms.len()));
    } else {
        r.note(format!("not Galois, {}", c.reason));
    }
    Ok(r)
}

fn closure_report(x: &GSet) -> Res<Report> {
    let c = galois_closure(x)?;
    let mut r = Report::new(format!("Galois closure of {}", x.name()));
    r.engine = "exhaustive".into();
    r.check("closure is Galois", c.certificate.is_galois, c.certificate.reason.clone());
    let bad = c.projections.iter().position(|p| !c.closure.is_equivariant(x, p));
    r.check("projections are equivariant", bad.is_none(), bad.map(|i| format!("projection {i}")).unwrap_or_default());
    r.note(format!("closure {} with {} points", c.closure.name(), c.closure.len()));
    r.note(format!("kernel {}", x.group().describe_subgroup(c.closure.kernel())));
    Ok(r)
}

fn factor_report(chain: &GroupChain, subgroup: Option<&str>) -> Res<Report> {
    let top = chain.len() - 1;
    let objects = match subgroup {
        Some(s) => vec![cosets(chain.top(), s)?],
        None => localic::category::transitive_representatives(chain.top())?,
    };
    let mut r = Report::new(format!("factoring through {}", chain.describe()));
    r.engine = "exhaustive".into();
    r.note("finite truncation: checks run on the listed stages, not on the inverse limit");
    for x in &objects {
        let f = factor_transitive(chain, x)?;
        let back = f.object.restrict_along(&chain.projection(top, f.stage))?;
        r.check(format!("{} comes back from stage {}", x.name(), f.stage + 1), back.is_equivariant(x, &f.epi), "");
        r.note(format!("{} factors through stage {} as {}", x.name(), f.stage + 1, f.object.name()));
    }
    Ok(r)
}

fn yoneda_report(ctx: &mut Ctx, f: &FunctorArg, object: Option<&str>, samples: usize) -> Res<Report> {
    let cfg = ctx.engine()?;
    let mut r = Report::new("localic Yoneda");
    let run_one = |r: &mut Report, site: &SiteCategory, only: Option<usize>| -> Res<()> {
        let cat = &site.category;
        for a in (0..cat.object_count()).filter(|&a| only.is_none_or(|o| o == a)) {
            r.absorb(yoneda_verify(cat, a, &site.functor, &cfg)?);
            r.absorb(yoneda_auto_verify(cat, a, a, &cfg)?);
        }
        Ok(())
    };
    if f.group.is_none() && f.functor.is_none() {
        let cats = sample_categories(ctx.global.seed, samples, &SampleBounds::default())?;
        for (cat, func) in cats {
            run_one(&mut r, &SiteCategory::abstract_site(cat, func)?, None)?;
        }
        r.note(format!("{samples} sampled categories, seed {}", ctx.global.seed));
    } else {
        let site = ctx.site_of(f)?;
        let only = match object {
            Some(name) => Some(
                site.category.objects().iter().position(|o| o == name).ok_or_else(|| InputError(format!("--object: no object `{name}`")))?,
            ),
            None => None,
        };
        run_one(&mut r, &site, only)?;
    }
    r.engine = format!("{:?}", cfg.choice).to_lowercase();
    if r.checks.is_empty() {
        r.check("at least one object checked", Verdict::Fail, "");
    }
    Ok(r)
}
