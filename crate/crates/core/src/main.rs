//! Command-line front end: diagram shadows, the closure census, the
//! hyperbolic triangulation pipeline, and polyhedron utilities.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};

use shadowcalc::classify::census::x_symmetry_order;
use shadowcalc::classify::{run_census, Certificate};
use shadowcalc::diagram::{build_star_shadow, parse_pd, reduce_with_best_orientations, StarShadow};
use shadowcalc::hyp::{
    apply_regluing, build_double_cover, build_pentachoron_complex, cusp_moduli, gf2_face_signs,
    gluing_equations, parse_triangulation, perturbed_regular, serialize_triangulation,
    shipped_variants, solve_shapes, total_volume, IdealTriangulation,
};
use shadowcalc::poly::branching::enumerate_branchings;
use shadowcalc::poly::format;
use shadowcalc::poly::homology::first_homology;
use shadowcalc::poly::iso::{isomorphic, IsoOptions};

#[derive(Parser)]
#[command(name = "shadowcalc", version, about = "Shadow calculus and hyperbolic geometry toolbox")]
struct Cli {
    /// Solver tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Seed for the Newton start perturbation (the only randomness).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for emitted files and the run manifest.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the shadow of a link diagram in planar-diagram notation.
    Shadow(ShadowArgs),
    /// Enumerate the census of branchable closures.
    Classify(ClassifyArgs),
    /// Solve gluing equations of an ideal triangulation.
    Hyp(HypArgs),
    /// Polyhedron file utilities.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
}

#[derive(Args)]
struct ShadowArgs {
    /// Planar diagram file.
    pd_file: PathBuf,
    /// Emit the starred shadow (faces plus annuli).
    #[arg(long)]
    star: bool,
    /// Also remove the outer region for the reduced shadow.
    #[arg(long)]
    reduced: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Keep classes eliminated by the simple-connectivity filter.
    #[arg(long)]
    keep_eliminated: bool,
    /// Restrict to closures of one of the three 4-valent graph types.
    #[arg(long)]
    graph_type: Option<u8>,
    /// Maximum tower height tried by the simple-connectivity filter.
    #[arg(long, default_value_t = 3)]
    max_height: usize,
}

#[derive(Args)]
struct HypArgs {
    /// Triangulation file to solve.
    file: Option<PathBuf>,
    /// Build and solve the canonical 10-tetrahedron double cover.
    #[arg(long)]
    build_cover: bool,
    /// Apply the shipped pants regluing with this index (0 = identity).
    #[arg(long)]
    reglue: Option<usize>,
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Check the polyhedron invariants and report violations.
    Validate { file: PathBuf },
    /// Integral first homology.
    Homology { file: PathBuf },
    /// Enumerate all valid branchings.
    Branchings { file: PathBuf },
    /// Decide isomorphism of two polyhedra (respecting gleams).
    Iso { a: PathBuf, b: PathBuf },
}

struct Manifest {
    command: String,
    tol: f64,
    seed: u64,
    inputs: Vec<(String, String)>,
    outputs: Vec<(String, String)>,
}

impl Manifest {
    fn new(command: &str, tol: f64, seed: u64) -> Manifest {
        Manifest { command: command.into(), tol, seed, inputs: Vec::new(), outputs: Vec::new() }
    }

    fn record_input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push((path.display().to_string(), hex_digest(bytes)));
    }

    fn emit(&mut self, dir: &Path, name: &str, contents: &str) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let path = dir.join(name);
        fs::write(&path, contents)?;
        self.outputs.push((path.display().to_string(), hex_digest(contents.as_bytes())));
        Ok(())
    }

    fn write(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let body = json!({
            "command": self.command,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "tol": self.tol,
            "seed": self.seed,
            "inputs": self.inputs.iter().map(|(p, d)| json!({"path": p, "sha256": d})).collect::<Vec<_>>(),
            "outputs": self.outputs.iter().map(|(p, d)| json!({"path": p, "sha256": d})).collect::<Vec<_>>(),
        });
        fs::write(dir.join("manifest.json"), pretty(&body))
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Shadow(args) => cmd_shadow(&cli, args),
        Command::Classify(args) => cmd_classify(&cli, args),
        Command::Hyp(args) => cmd_hyp(&cli, args),
        Command::Poly { command } => cmd_poly(&cli, command),
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn gleam_table(shadow: &StarShadow) -> serde_json::Value {
    let entries: Vec<_> = shadow
        .dec
        .gleams
        .iter()
        .flatten()
        .map(|(&region, g)| json!({"region": region, "gleam": g.as_f64()}))
        .collect();
    json!(entries)
}

fn cmd_shadow(cli: &Cli, args: &ShadowArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.pd_file) {
        Ok(t) => t,
        Err(e) => return fail(2, &format!("{}: {e}", args.pd_file.display())),
    };
    let diagram = match parse_pd(&text) {
        Ok(d) => d,
        Err(e) => return fail(2, &format!("invalid diagram: {e}")),
    };
    let mut manifest = Manifest::new("shadow", cli.tol, cli.seed);
    manifest.record_input(&args.pd_file, text.as_bytes());
    let star = build_star_shadow(&diagram, None);
    let mut report = json!({ "star": { "gleams": gleam_table(&star) } });
    if args.star || !args.reduced {
        if manifest.emit(&cli.out_dir, "star.spoly", &format::serialize(&star.dec)).is_err() {
            return fail(1, "cannot write output files");
        }
    }
    if args.reduced {
        let (reduced, orientations) = match reduce_with_best_orientations(&diagram) {
            Ok(r) => r,
            Err(e) => return fail(3, &format!("cannot remove the outer region: {e}")),
        };
        report["reduced"] = json!({
            "gleams": gleam_table(&reduced),
            "orientations": orientations,
        });
        if manifest.emit(&cli.out_dir, "reduced.spoly", &format::serialize(&reduced.dec)).is_err() {
            return fail(1, "cannot write output files");
        }
    }
    let body = pretty(&report);
    if manifest.emit(&cli.out_dir, "gleams.json", &body).is_err() || manifest.write(&cli.out_dir).is_err() {
        return fail(1, "cannot write output files");
    }
    print!("{body}");
    ExitCode::SUCCESS
}

fn cmd_classify(cli: &Cli, args: &ClassifyArgs) -> ExitCode {
    let mut manifest = Manifest::new("classify", cli.tol, cli.seed);
    let census_dir = cli.out_dir.join("census");
    let mut listed = Vec::new();
    if args.graph_type == Some(3) {
        // The disconnected 4-valent graph admits no closure at all.
        assert!(shadowcalc::classify::census::type3_closures().is_empty());
    } else {
        for entry in run_census(args.max_height) {
            if let Some(t) = args.graph_type {
                if entry.class.graph_type != t {
                    continue;
                }
            }
            let eliminated =
                matches!(entry.certificate, Certificate::NotSimplyConnectable { .. });
            if eliminated && !args.keep_eliminated {
                continue;
            }
            let file = format!(
                "{}.spoly",
                entry.label.replace(['(', ')'], "").replace('-', "_")
            );
            if manifest.emit(&census_dir, &file, &format::serialize(&entry.class.rep)).is_err() {
                return fail(1, "cannot write output files");
            }
            listed.push(json!({
                "label": entry.label,
                "name": entry.p_label,
                "graph_type": entry.class.graph_type,
                "closure_count": entry.class.specs.len(),
                "branching_count": entry.class.branching_count,
                "boundary_circles": entry.class.rep.poly.boundary_circles().len(),
                "eliminated": eliminated,
                "certificate": serde_json::to_value(&entry.certificate).expect("serializable"),
                "file": file,
            }));
        }
    }
    let body = pretty(&json!({
        "entries": listed,
        "x_symmetry_order": x_symmetry_order(),
    }));
    if manifest.emit(&census_dir, "census.json", &body).is_err() || manifest.write(&cli.out_dir).is_err() {
        return fail(1, "cannot write output files");
    }
    print!("{body}");
    ExitCode::SUCCESS
}

fn cmd_hyp(cli: &Cli, args: &HypArgs) -> ExitCode {
    let mut manifest = Manifest::new("hyp", cli.tol, cli.seed);
    let tri: IdealTriangulation = if args.build_cover || args.reglue.is_some() {
        let q = build_pentachoron_complex();
        let (eps, _) = gf2_face_signs(&q).expect("the sign system is solvable");
        let cover = build_double_cover(&q, &eps);
        match args.reglue {
            None => cover,
            Some(i) => {
                let variants = shipped_variants();
                let Some(variant) = variants.get(i) else {
                    return fail(2, &format!("no shipped regluing {i}; have 0..{}", variants.len() - 1));
                };
                match apply_regluing(&cover, variant) {
                    Ok(t) => t,
                    Err(e) => return fail(2, &format!("regluing rejected: {e}")),
                }
            }
        }
    } else {
        let Some(file) = &args.file else {
            return fail(2, "need a triangulation file, --build-cover, or --reglue");
        };
        let text = match fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => return fail(2, &format!("{}: {e}", file.display())),
        };
        manifest.record_input(file, text.as_bytes());
        match parse_triangulation(&text) {
            Ok(t) => t,
            Err(e) => return fail(2, &format!("invalid triangulation: {e}")),
        }
    };
    let (sys, _) = gluing_equations(&tri);
    let sol = match solve_shapes(&sys, &perturbed_regular(tri.len(), cli.seed), cli.tol) {
        Ok(s) => s,
        Err(e) => return fail(4, &format!("solver: {e}")),
    };
    if !sol.geometric {
        return fail(4, "solution is not geometric (nonpositive imaginary part)");
    }
    let (volume, flat) = total_volume(&sol);
    let cusps = cusp_moduli(&tri, &sol.shapes);
    let body = pretty(&json!({
        "tetrahedra": tri.len(),
        "shapes": sol.shapes.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "residual": sol.residual,
        "volume": volume,
        "flat_warning": flat,
        "cusps": cusps.iter().map(|c| json!({
            "cusp": c.cusp,
            "triangles": c.triangles,
            "modulus": [c.modulus.re, c.modulus.im],
        })).collect::<Vec<_>>(),
    }));
    if manifest.emit(&cli.out_dir, "triangulation.itri", &serialize_triangulation(&tri)).is_err()
        || manifest.emit(&cli.out_dir, "solution.json", &body).is_err()
        || manifest.write(&cli.out_dir).is_err()
    {
        return fail(1, "cannot write output files");
    }
    print!("{body}");
    ExitCode::SUCCESS
}

fn cmd_poly(cli: &Cli, command: &PolyCommand) -> ExitCode {
    let read = |path: &PathBuf| -> Result<shadowcalc::poly::DecoratedPolyhedron, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        format::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    };
    let _ = cli;
    match command {
        PolyCommand::Validate { file } => match read(file) {
            Err(e) => fail(2, &e),
            Ok(dec) => match dec.poly.analyze() {
                Ok(_) => {
                    println!("ok");
                    ExitCode::SUCCESS
                }
                Err(violations) => {
                    for v in violations {
                        println!("violation: {v:?}");
                    }
                    ExitCode::from(2)
                }
            },
        },
        PolyCommand::Homology { file } => match read(file) {
            Err(e) => fail(2, &e),
            Ok(dec) => {
                println!("{}", first_homology(&dec.poly));
                ExitCode::SUCCESS
            }
        },
        PolyCommand::Branchings { file } => match read(file) {
            Err(e) => fail(2, &e),
            Ok(dec) => match dec.poly.analyze() {
                Err(_) => fail(2, "invalid polyhedron"),
                Ok(structure) => {
                    let branchings = enumerate_branchings(&dec.poly, &structure);
                    println!("{}", branchings.len());
                    for b in branchings {
                        let word: String =
                            b.iter().map(|&x| if x { '+' } else { '-' }).collect();
                        println!("{word}");
                    }
                    ExitCode::SUCCESS
                }
            },
        },
        PolyCommand::Iso { a, b } => match (read(a), read(b)) {
            (Err(e), _) | (_, Err(e)) => fail(2, &e),
            (Ok(pa), Ok(pb)) => {
                let opts = IsoOptions { respect_branching: false, respect_gleams: true };
                if isomorphic(&pa, &pb, opts) {
                    println!("isomorphic");
                    ExitCode::SUCCESS
                } else {
                    println!("not isomorphic");
                    ExitCode::from(1)
                }
            }
        },
    }
}
