//! Command-line driver for the prism-orbifold toolkit.
//!
//! Output is plain text, one `key = value` per line; exit status is zero iff
//! every requested check passed.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use prism_core::catalog::{builtin_tables, lookup, CatalogEntry, PrismSignature};
use prism_core::complex::{
    build_complex, build_spine, coarsen_spine, first_homology, fundamental_presentation,
};
use prism_core::filters::{CuspKillVerdict, Verdict};
use prism_core::lowindex::{EnumerationPlan, EnumerationTask};
use prism_core::perm::{parse_reps, Gen, Orientation, PermRep, Permutation};
use prism_core::{catalog, filters, geom, perm, tri};

#[derive(Parser)]
#[command(name = "prism", about = "catalog, covers, and geometry of one-cusped prism orbifolds", version)]
struct Cli {
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or validate catalog signatures and their minimum cover degrees.
    Catalog(CatalogCmd),
    /// Validate reps: relators, transitivity, manifold, cusps, homology.
    Check(RepCmd),
    /// Spine cell counts and the homology of its presentation.
    Spine(SpineCmd),
    /// Geodesic-surface report for manifold covers.
    Surface(RepCmd),
    /// Export and validate tetrahedral gluing tables.
    Triangulate(TriangulateCmd),
    /// Embedding data, matrix residuals, maximal cusp, and volume.
    Geometry(GeometryCmd),
    /// Knot-complement pre-filter table (cusp killing, double cover, MCD).
    Prefilter(PrefilterCmd),
    /// Enumerate subgroup classes up to an index bound.
    Enumerate(EnumerateCmd),
    /// Enumerate then filter covers (manifold, one cusp, H1 = Z).
    Pipeline(PipelineCmd),
    /// Isometry search between covers, or intertwine verification.
    Isom(IsomCmd),
}

#[derive(Args)]
struct SigArg {
    /// Catalog name (e.g. O333_2, O236_5,12) or family name with --n.
    #[arg(long)]
    sig: String,
    /// Family parameter when --sig names a family row.
    #[arg(long)]
    n: Option<u32>,
}

impl SigArg {
    fn resolve(&self) -> Result<PrismSignature, String> {
        lookup(&self.sig, self.n).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct CatalogCmd {
    /// Show one named row.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    /// List every catalog row (families at n = 6 and 7).
    #[arg(long)]
    all: bool,
    /// Validate a nine-tuple given as nine integers.
    #[arg(long, num_args = 9, value_name = "AI")]
    tuple: Option<Vec<u32>>,
}

#[derive(Args)]
struct RepCmd {
    #[command(flatten)]
    sig: SigArg,
    /// Rep files (four lines x:/y:/z:/w: per record, blank-line separated).
    #[arg(long, required = true, num_args = 1..)]
    reps: Vec<PathBuf>,
}

#[derive(Args)]
struct SpineCmd {
    #[command(flatten)]
    rep: RepCmd,
    /// Also coarsen the spine before reporting.
    #[arg(long)]
    coarse: bool,
}

#[derive(Args)]
struct TriangulateCmd {
    #[command(flatten)]
    rep: RepCmd,
    /// Write the gluing table of the first rep here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GeometryCmd {
    #[command(flatten)]
    sig: SigArg,
    /// Compute the prism volume by quadrature.
    #[arg(long)]
    volume: bool,
    /// Absolute tolerance for quadrature and residual checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Also emit machine-readable `name quantity value error` lines.
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct PrefilterCmd {
    /// Run over the whole catalog (families at n = 6 and 7).
    #[arg(long)]
    all: bool,
    #[arg(long)]
    sig: Option<String>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct EnumerateCmd {
    #[command(flatten)]
    sig: SigArg,
    #[arg(long, default_value_t = 24)]
    max_index: usize,
    /// Write the representations here (rep file format).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file of completed search prefixes, for resuming.
    #[arg(long)]
    resume: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineCmd {
    #[command(flatten)]
    sig: SigArg,
    #[arg(long, default_value_t = 24)]
    max_index: usize,
    /// Write surviving reps here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IsomCmd {
    #[command(flatten)]
    sig: SigArg,
    #[arg(long)]
    reps_a: PathBuf,
    #[arg(long)]
    reps_b: PathBuf,
    /// preserving, reversing, or both.
    #[arg(long, default_value = "both")]
    orientation: String,
    /// Verify one permutation (24 images) instead of searching.
    #[arg(long, num_args = 1.., value_name = "IMG")]
    verify_phi: Option<Vec<usize>>,
    /// Generator map for verification, e.g. "y=z+,z=y+,w=w+".
    #[arg(long)]
    genmap: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global();
    }
    let outcome = match cli.command {
        Command::Catalog(c) => cmd_catalog(c),
        Command::Check(c) => cmd_check(c),
        Command::Spine(c) => cmd_spine(c),
        Command::Surface(c) => cmd_surface(c),
        Command::Triangulate(c) => cmd_triangulate(c),
        Command::Geometry(c) => cmd_geometry(c),
        Command::Prefilter(c) => cmd_prefilter(c),
        Command::Enumerate(c) => cmd_enumerate(c),
        Command::Pipeline(c) => cmd_pipeline(c),
        Command::Isom(c) => cmd_isom(c),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn load_reps(paths: &[PathBuf]) -> Result<Vec<PermRep>, String> {
    let mut reps = Vec::new();
    for p in paths {
        let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        reps.extend(parse_reps(&text).map_err(|e| format!("{}: {e}", p.display()))?);
    }
    if reps.is_empty() {
        return Err("no representations found".into());
    }
    Ok(reps)
}

fn catalog_rows() -> Vec<PrismSignature> {
    let mut rows = Vec::new();
    for entry in builtin_tables() {
        match entry {
            CatalogEntry::Fixed(sig) => rows.push(sig),
            CatalogEntry::Family(fam) => {
                for n in [6, 7] {
                    rows.push(fam.instantiate(n).expect("n >= 3"));
                }
            }
        }
    }
    rows
}

fn cmd_catalog(c: CatalogCmd) -> Result<bool, String> {
    if let Some(tuple) = c.tuple {
        let a: [u32; 9] = tuple.try_into().expect("clap enforces nine values");
        return match catalog::make_signature(a, None) {
            Ok(sig) => {
                let (_, mcd) = catalog::vertex_data(&sig);
                println!("signature = {sig}");
                println!("cusp = ({},{},{})", sig.cusp_type()[0], sig.cusp_type()[1], sig.cusp_type()[2]);
                println!("mcd = {mcd}");
                Ok(true)
            }
            Err(e) => {
                println!("invalid = {e}");
                Ok(false)
            }
        };
    }
    if let Some(name) = c.name {
        let sig = lookup(&name, c.n).map_err(|e| e.to_string())?;
        let (data, mcd) = catalog::vertex_data(&sig);
        println!("{}", sig.to_line());
        for d in data {
            println!(
                "vertex {} labels ({},{},{}) order {}",
                d.vertex, d.labels[0], d.labels[1], d.labels[2], d.order
            );
        }
        println!("mcd = {mcd}");
        return Ok(true);
    }
    if c.all {
        for sig in catalog_rows() {
            let (_, mcd) = catalog::vertex_data(&sig);
            println!("{}\tmcd={mcd}", sig.to_line());
        }
        return Ok(true);
    }
    Err("pass --name, --all, or --tuple".into())
}

fn h1_of(sig: &PrismSignature, rep: &PermRep) -> Result<String, String> {
    let mut cx = build_complex(sig, rep).map_err(|e| e.to_string())?;
    let sp = build_spine(&mut cx);
    let p = fundamental_presentation(&sp).map_err(|e| e.to_string())?;
    Ok(first_homology(&p).to_string())
}

fn cmd_check(c: RepCmd) -> Result<bool, String> {
    let sig = c.sig.resolve()?;
    let reps = load_reps(&c.reps)?;
    let mut all_ok = true;
    for (k, rep) in reps.iter().enumerate() {
        let report = perm::validate_rep(&sig, rep);
        println!("rep[{k}].degree = {}", rep.degree());
        println!("rep[{k}].valid = {}", report.is_valid());
        for f in &report.relator_failures {
            println!("rep[{k}].relator_failure = {} at point {}", f.word, f.point);
        }
        if !report.is_valid() {
            all_ok = false;
            continue;
        }
        let manifold = perm::is_manifold(&sig, rep).is_manifold;
        let cusps = perm::cusp_orbits(rep).len();
        println!("rep[{k}].manifold = {}", if manifold { "yes" } else { "no" });
        println!("rep[{k}].cusps = {cusps}");
        let h1 = h1_of(&sig, rep)?;
        println!("rep[{k}].h1 = {h1}");
        all_ok &= manifold && cusps == 1 && h1 == "Z";
    }
    Ok(all_ok)
}

fn cmd_spine(c: SpineCmd) -> Result<bool, String> {
    let sig = c.rep.sig.resolve()?;
    let reps = load_reps(&c.rep.reps)?;
    for (k, rep) in reps.iter().enumerate() {
        let mut cx = build_complex(&sig, rep).map_err(|e| e.to_string())?;
        let mut sp = build_spine(&mut cx);
        if c.coarse {
            sp = coarsen_spine(&sp);
        }
        let (v, e, f) = sp.counts();
        println!("rep[{k}].vertices = {v}");
        println!("rep[{k}].edges = {e}");
        println!("rep[{k}].two_cells = {f}");
        println!("rep[{k}].euler = {}", sp.euler_characteristic());
        let p = fundamental_presentation(&sp).map_err(|e| e.to_string())?;
        println!("rep[{k}].generators = {}", p.generators);
        println!("rep[{k}].relators = {}", p.relators.len());
        println!("rep[{k}].h1 = {}", first_homology(&p));
    }
    Ok(true)
}

fn cmd_surface(c: RepCmd) -> Result<bool, String> {
    let sig = c.sig.resolve()?;
    let reps = load_reps(&c.reps)?;
    for (k, rep) in reps.iter().enumerate() {
        let s = prism_core::geodesic_surface(&sig, rep).map_err(|e| e.to_string())?;
        println!("rep[{k}].components = {}", s.components);
        let (an, ad) = s.area_over_pi;
        if ad == 1 {
            println!("rep[{k}].area = {an} pi");
        } else {
            println!("rep[{k}].area = {an}/{ad} pi");
        }
        println!("rep[{k}].euler = {}", s.euler_characteristic);
        if let Some(g) = s.genus {
            println!("rep[{k}].genus = {g}");
        }
        println!(
            "rep[{k}].separating = {}",
            if s.separating { "yes" } else { "not guaranteed" }
        );
    }
    Ok(true)
}

fn cmd_triangulate(c: TriangulateCmd) -> Result<bool, String> {
    let sig = c.rep.sig.resolve()?;
    let reps = load_reps(&c.rep.reps)?;
    let mut all_ok = true;
    for (k, rep) in reps.iter().enumerate() {
        let t = tri::triangulate(&sig, rep).map_err(|e| e.to_string())?;
        let v = tri::validate_triangulation(&t);
        println!("rep[{k}].tetrahedra = {}", t.tet_count);
        println!("rep[{k}].ideal_vertex_classes = {}", t.ideal_vertex_classes);
        println!("rep[{k}].finite_vertex_classes = {}", t.finite_vertex_classes);
        println!("rep[{k}].valid = {}", v.is_valid());
        for viol in &v.violations {
            println!("rep[{k}].violation = {viol}");
        }
        all_ok &= v.is_valid();
        if k == 0 {
            if let Some(out) = &c.out {
                fs::write(out, tri::export_gluing_table(&t)).map_err(|e| e.to_string())?;
                println!("wrote = {}", out.display());
            }
        }
    }
    Ok(all_ok)
}

fn fmt15(x: f64) -> String {
    format!("{x:.15}")
}

fn cmd_geometry(c: GeometryCmd) -> Result<bool, String> {
    let sig = c.sig.resolve()?;
    let name = sig.name().unwrap_or("signature").to_string();
    let geom = geom::embed(&sig).map_err(|e| e.to_string())?;
    println!("sig = {}", sig.to_line());
    println!("a3_case = {}", geom.a3);
    println!("v1 = {} + {} i", fmt15(geom.v1.re), fmt15(geom.v1.im));
    println!("v2 = {} + {} i", fmt15(geom.v2.re), fmt15(geom.v2.im));
    println!("s = {}", fmt15(geom.s));
    println!("t = {}", fmt15(geom.t));
    println!("r = {}", fmt15(geom.r));
    println!("constraint_residual = {:.3e}", geom.constraint_residual);
    let residual = geom::verify_matrix_rep(&geom, &sig);
    println!("matrix_residual = {residual:.3e}");
    let mut ok = residual < c.tol.max(1e-9);
    let cusp = geom::maximal_cusp(&sig, &geom);
    println!("cusp_height = {}", fmt15(cusp.height));
    if let Some(v) = cusp.volume {
        println!("cusp_volume = {}", fmt15(v));
        if c.machine {
            println!("{name} cusp_volume {} 0", fmt15(v));
        }
    }
    if c.volume {
        match geom::prism_volume(&sig, &geom, c.tol) {
            Ok(v) => {
                println!("x_l = {}", fmt15(v.x_l));
                println!("x_u = {}", fmt15(v.x_u));
                for (i, r) in v.regions.iter().enumerate() {
                    println!("volume_region{} = {}", i + 1, fmt15(*r));
                }
                println!("volume = {}", fmt15(v.total));
                println!("volume_doubled = {}", fmt15(2.0 * v.total));
                println!("volume_error_estimate = {:.3e}", v.est_error);
                if c.machine {
                    println!("{name} volume {} {:.3e}", fmt15(v.total), v.est_error);
                }
            }
            Err(e) => {
                println!("volume_error = {e}");
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn cmd_prefilter(c: PrefilterCmd) -> Result<bool, String> {
    let rows = if c.all {
        catalog_rows()
    } else if let Some(name) = &c.sig {
        vec![lookup(name, c.n).map_err(|e| e.to_string())?]
    } else {
        return Err("pass --all or --sig".into());
    };
    println!("# UT (unit translation) test: not implemented");
    println!("name\tCK\tDC\tMCD\tverdict");
    for sig in rows {
        let r = filters::prefilter(&sig);
        let ck = match r.cusp_kill {
            CuspKillVerdict::Trivial => "1",
            CuspKillVerdict::Nontrivial => "0",
        };
        let dc = match r.double_cover {
            Some(true) => "1",
            Some(false) => "0",
            None => "-",
        };
        let verdict = match &r.verdict {
            Verdict::Surviving => "surviving".to_string(),
            Verdict::Eliminated(reasons) => format!("eliminated ({})", reasons.join("; ")),
        };
        println!("{}\t{ck}\t{dc}\t{}\t{verdict}", r.name, r.mcd);
    }
    Ok(true)
}

fn read_checkpoint(path: &PathBuf) -> BTreeSet<String> {
    fs::read_to_string(path)
        .map(|s| s.lines().map(str::to_string).collect())
        .unwrap_or_default()
}

fn cmd_enumerate(c: EnumerateCmd) -> Result<bool, String> {
    let sig = c.sig.resolve()?;
    let task = EnumerationTask {
        sig,
        max_index: c.max_index,
    };
    let plan = EnumerationPlan::new(&task);
    let total_seeds = plan.seed_count();
    eprintln!("search prefixes: {total_seeds}");

    let done = c.resume.as_ref().map(read_checkpoint).unwrap_or_default();
    let mut out_file = match &c.out {
        Some(p) => Some(
            fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|e| e.to_string())?,
        ),
        None => None,
    };
    let mut checkpoint = match &c.resume {
        Some(p) => Some(
            fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|e| e.to_string())?,
        ),
        None => None,
    };
    let mut emit = |tag: &str, reps: &[PermRep], total: &mut usize| -> Result<(), String> {
        *total += reps.len();
        if let Some(f) = out_file.as_mut() {
            f.write_all(perm::format_reps(reps).as_bytes())
                .map_err(|e| e.to_string())?;
            if !reps.is_empty() {
                f.write_all(b"\n").map_err(|e| e.to_string())?;
            }
        }
        if let Some(f) = checkpoint.as_mut() {
            writeln!(f, "{tag}").map_err(|e| e.to_string())?;
        }
        Ok(())
    };

    let mut total = 0usize;
    if !done.contains("early") {
        emit("early", &plan.early, &mut total)?;
    }
    let remaining: Vec<usize> = (0..total_seeds)
        .filter(|i| !done.contains(&i.to_string()))
        .collect();
    let batch = rayon::current_num_threads().max(1) * 4;
    let mut completed = total_seeds - remaining.len();
    for chunk in remaining.chunks(batch) {
        let results = plan.run_seeds(chunk);
        for (id, reps) in results {
            emit(&id.to_string(), &reps, &mut total)?;
        }
        completed += chunk.len();
        eprintln!("progress: {completed}/{total_seeds} prefixes, {total} classes this run");
    }
    println!("classes_written = {total}");
    eprintln!(
        "stats: nodes={} min_calls={} min_prunes={}",
        prism_core::lowindex::NODES.load(std::sync::atomic::Ordering::Relaxed),
        prism_core::lowindex::MIN_CALLS.load(std::sync::atomic::Ordering::Relaxed),
        prism_core::lowindex::MIN_PRUNES.load(std::sync::atomic::Ordering::Relaxed)
    );
    Ok(true)
}

fn cmd_pipeline(c: PipelineCmd) -> Result<bool, String> {
    let sig = c.sig.resolve()?;
    let task = EnumerationTask {
        sig: sig.clone(),
        max_index: c.max_index,
    };
    let reps = prism_core::enumerate_subgroups(&task);
    println!("classes = {}", reps.len());
    let out = filters::filter_covers(&sig, &reps);
    println!("manifold = {}", out.counts.manifold);
    println!("one_cusped = {}", out.counts.one_cusped);
    println!("homology_z = {}", out.counts.homology_z);
    if let Some(p) = &c.out {
        fs::write(p, perm::format_reps(&out.survivors)).map_err(|e| e.to_string())?;
        println!("wrote = {}", p.display());
    }
    Ok(true)
}

fn parse_genmap(s: &str) -> Result<Vec<(Gen, Gen, i8)>, String> {
    let gen_of = |c: char| -> Result<Gen, String> {
        c.to_string().parse().map_err(|e: String| e)
    };
    let mut out = Vec::new();
    for part in s.split(',') {
        let (lhs, rhs) = part
            .split_once('=')
            .ok_or_else(|| format!("bad genmap entry {part:?}; want g=g'+ or g=g'-"))?;
        let mut rhs_chars = rhs.chars();
        let g2 = rhs_chars.next().ok_or("empty genmap target")?;
        let sign = match rhs_chars.next() {
            Some('+') | None => 1,
            Some('-') => -1,
            Some(c) => return Err(format!("bad sign {c:?}")),
        };
        let l: char = lhs
            .chars()
            .next()
            .ok_or_else(|| "empty genmap source".to_string())?;
        out.push((gen_of(l)?, gen_of(g2)?, sign));
    }
    Ok(out)
}

fn cmd_isom(c: IsomCmd) -> Result<bool, String> {
    let sig = c.sig.resolve()?;
    let a = load_reps(&[c.reps_a.clone()])?;
    let b = load_reps(&[c.reps_b.clone()])?;
    let (ra, rb) = (&a[0], &b[0]);
    if let Some(phi_images) = c.verify_phi {
        let phi = Permutation::from_images(phi_images).map_err(|e| e.to_string())?;
        let genmap = parse_genmap(c.genmap.as_deref().unwrap_or("x=x+,y=y+,z=z+,w=w+"))?;
        let ok = perm::verify_intertwine(&phi, ra, rb, &genmap);
        println!("intertwines = {ok}");
        return Ok(ok);
    }
    let mut all = Vec::new();
    if c.orientation == "preserving" || c.orientation == "both" {
        let found = perm::find_isometries(&sig, ra, &sig, rb, Orientation::Preserving)
            .map_err(|e| e.to_string())?;
        println!("preserving = {}", found.len());
        all.extend(found.into_iter().map(|p| ("preserving", p)));
    }
    if c.orientation == "reversing" || c.orientation == "both" {
        let found = perm::find_isometries(&sig, ra, &sig, rb, Orientation::Reversing)
            .map_err(|e| e.to_string())?;
        println!("reversing = {}", found.len());
        all.extend(found.into_iter().map(|p| ("reversing", p)));
    }
    for (kind, phi) in &all {
        let images: Vec<String> = phi.images().iter().map(|v| v.to_string()).collect();
        println!("{kind}: {}", images.join(" "));
    }
    Ok(true)
}
