//! Command-line surface over the library: face lattices, admissibility,
//! orientations, loops, chain complexes, oriental identifications, higher
//! Bruhat orders, chirotopes, molecule and regular-directed-complex checks,
//! and seeded Monte Carlo experiments.
//!
//! Exit codes: 0 on success/pass, 1 on a negative verdict, 2 on input
//! errors.

use std::collections::HashMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use polyframe::chirotope::{enumerate_bruhat, flag_chirotope, phi_to_cubillage, verify_cubillage};
use polyframe::diagram::{
    chains_of, cubical_oriental, face_label, iso_check, steiner_verdict, street_label,
    street_oriental, zonotope_face_word,
};
use polyframe::error::Error;
use polyframe::experiment::{report_csv, run_experiment, ExperimentKind, ExperimentSpec};
use polyframe::framing::{f_orientation, Frame, FramedPolytope};
use polyframe::io::{read_polytope, ChirotopeJson, ComplexJson, PolytopeJson};
use polyframe::molecules::{layering, poset_orientation, rdc_check, StSide};
use polyframe::polytope::{cyclic_zonotope, make_family, FamilySpec};
use polyframe::strings;

#[derive(Parser)]
#[command(name = "polyframe", about = "exact orientation data of framed polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientalKind {
    Simplex,
    Cube,
}

#[derive(Subcommand)]
enum Command {
    /// Face lattice of a polytope file
    Faces {
        #[arg(long)]
        file: String,
    },
    /// Admissibility of a frame on a polytope
    CheckFrame {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
    },
    /// Induced f-orientation: facet partition per face
    Orient {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
    },
    /// Cellular loop search per level
    Loops {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
        /// restrict to one level
        #[arg(long)]
        k: Option<i64>,
        /// also run the inhomogeneous-loop check
        #[arg(long)]
        strong: bool,
    },
    /// Based augmented chain complex and its Steiner verdict
    Chains {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
    },
    /// Identify cyclic families with the orientals
    OrientalVerify {
        #[arg(long, value_enum)]
        kind: OrientalKind,
        #[arg(long)]
        dim: usize,
    },
    /// Higher Bruhat order enumeration
    Bruhat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        count_only: bool,
        /// verify that every cubillage tiles the zonotope
        #[arg(long)]
        verify_cubillages: bool,
    },
    /// Chirotope of the configuration, or the full flag of a framed simplex
    Chirotope {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
        #[arg(long)]
        flag: bool,
    },
    /// Layering-certified molecule status of the extended boundaries
    Molecule {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
    },
    /// Regular-directed-complex conditions per face
    Rdc {
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "canonical")]
        frame: String,
    },
    /// Seeded Monte Carlo loop statistics
    Experiment {
        #[arg(long, value_enum)]
        kind: CliExperimentKind,
        /// dimension range A..B
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        csv: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliExperimentKind {
    GaussianSimplex,
    RandomFrameSimplex,
    RandomFrameCube,
}

impl From<CliExperimentKind> for ExperimentKind {
    fn from(k: CliExperimentKind) -> Self {
        match k {
            CliExperimentKind::GaussianSimplex => ExperimentKind::GaussianSimplex,
            CliExperimentKind::RandomFrameSimplex => ExperimentKind::RandomFrameSimplex,
            CliExperimentKind::RandomFrameCube => ExperimentKind::RandomFrameCube,
        }
    }
}

fn parse_frame(spec: &str, json: &PolytopeJson, dim: usize) -> Result<Frame, Error> {
    match spec {
        "canonical" => Ok(Frame::canonical(dim)),
        "alternating" => Ok(Frame::alternating(dim)),
        "attached" => json
            .attached_frame()?
            .ok_or_else(|| Error::Parameter("polytope file carries no frame".into())),
        other => {
            if let Some(path) = other.strip_prefix("file:") {
                let fj = read_polytope(path)?;
                fj.attached_frame()?
                    .ok_or_else(|| Error::Parameter(format!("{path} carries no frame")))
            } else {
                Err(Error::Parameter(format!(
                    "unknown frame spec {other:?}; use canonical|alternating|attached|file:PATH"
                )))
            }
        }
    }
}

fn load(file: &str, frame_spec: &str) -> Result<FramedPolytope, Error> {
    let json = read_polytope(file)?;
    let cfg = json.config()?;
    polyframe::polytope::assert_vertices(&cfg)?;
    let frame = if frame_spec == "canonical" && json.frame.is_some() {
        // a bundled frame wins over the default
        parse_frame("attached", &json, cfg.ambient_dim)?
    } else {
        parse_frame(frame_spec, &json, cfg.ambient_dim)?
    };
    FramedPolytope::new(cfg, frame)
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Faces { file } => {
            let json = read_polytope(&file)?;
            let cfg = json.config()?;
            polyframe::polytope::assert_vertices(&cfg)?;
            let lattice = polyframe::polytope::face_lattice(&cfg)?;
            let faces: Vec<_> = lattice
                .faces
                .iter()
                .map(|f| json!({"vertices": f.vertices, "dim": f.dim}))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "dim": lattice.dim(),
                    "count": lattice.len(),
                    "faces": faces,
                }))
                .unwrap()
            );
            Ok(true)
        }
        Command::CheckFrame { file, frame } => {
            let fp = load(&file, &frame)?;
            let verdict = fp.is_admissible();
            let ok = verdict.is_admissible();
            let out = match verdict {
                polyframe::framing::Admissibility::Admissible => json!({"admissible": true}),
                polyframe::framing::Admissibility::Degenerate { face, dim, level } => json!({
                    "admissible": false,
                    "offending_face": face,
                    "face_dim": dim,
                    "level": level,
                }),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ok)
        }
        Command::Orient { file, frame } => {
            let fp = load(&file, &frame)?;
            fp.require_admissible()?;
            let orient = f_orientation(&fp)?;
            let mut out = serde_json::Map::new();
            for (face, (so, ta)) in &orient.faces {
                out.insert(
                    face_label(face),
                    json!({
                        "source": so.iter().map(|f| face_label(f)).collect::<Vec<_>>(),
                        "target": ta.iter().map(|f| face_label(f)).collect::<Vec<_>>(),
                    }),
                );
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(true)
        }
        Command::Loops { file, frame, k, strong } => {
            let fp = load(&file, &frame)?;
            fp.require_admissible()?;
            let levels: Vec<i64> = match k {
                Some(k) => vec![k],
                None => (0..=fp.dim() - 2).collect(),
            };
            let mut reports = Vec::new();
            let mut any = false;
            for k in levels {
                let cycle = strings::find_k_loop(&fp, k)?;
                let entry = match &cycle {
                    None => json!({"k": k, "loop_free": true}),
                    Some(c) => {
                        any = true;
                        let faces = strings::cycle_vertices(&fp, c);
                        let witnesses: Vec<Vec<usize>> = c
                            .iter()
                            .zip(c.iter().cycle().skip(1))
                            .map(|(&f, &g)| {
                                let fv = fp.lattice.faces[f].vertices.clone();
                                let gv = &fp.lattice.faces[g].vertices;
                                fv.into_iter().filter(|v| gv.contains(v)).collect()
                            })
                            .collect();
                        json!({"k": k, "loop_free": false, "cycle": faces, "witnesses": witnesses})
                    }
                };
                reports.push(entry);
            }
            if strong {
                let verdict = strings::strong_loop_check(&fp)?;
                any |= !verdict.strongly_loop_free;
                reports.push(json!({
                    "strongly_loop_free": verdict.strongly_loop_free,
                    "cycle": verdict.cycle.map(|c| strings::cycle_vertices(&fp, &c)),
                }));
            }
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            Ok(!any)
        }
        Command::Chains { file, frame } => {
            let fp = load(&file, &frame)?;
            fp.require_admissible()?;
            let orient = f_orientation(&fp)?;
            let complex = chains_of(&fp.lattice, &orient)?;
            let verdict = steiner_verdict(&complex);
            let out = json!({
                "complex": ComplexJson::from_complex(&complex),
                "unital": verdict.unital,
                "loop_free": verdict.loop_free,
                "strongly_loop_free": verdict.strongly_loop_free,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(verdict.is_steiner())
        }
        Command::OrientalVerify { kind, dim } => {
            let ok = match kind {
                OrientalKind::Simplex => {
                    let cfg = make_family(&FamilySpec::CyclicSimplex(dim))?;
                    let fp = FramedPolytope::new(cfg, Frame::alternating(dim))?;
                    fp.require_admissible()?;
                    let orient = f_orientation(&fp)?;
                    let complex = chains_of(&fp.lattice, &orient)?;
                    let oriental = street_oriental(dim);
                    let corr: HashMap<String, String> = fp
                        .lattice
                        .faces
                        .iter()
                        .filter(|f| f.dim >= 0)
                        .map(|f| {
                            let subset: Vec<usize> = f.vertices.iter().map(|v| v - 1).collect();
                            (face_label(&f.vertices), street_label(&subset))
                        })
                        .collect();
                    iso_check(&complex, &oriental, &corr)?
                        && steiner_verdict(&complex).is_strong_steiner()
                }
                OrientalKind::Cube => {
                    let (cfg, meta) = cyclic_zonotope(dim, dim, None)?;
                    let fp = FramedPolytope::new(cfg, Frame::alternating(dim))?;
                    fp.require_admissible()?;
                    let orient = f_orientation(&fp)?;
                    let complex = chains_of(&fp.lattice, &orient)?;
                    let oriental = cubical_oriental(dim);
                    let corr: HashMap<String, String> = fp
                        .lattice
                        .faces
                        .iter()
                        .filter(|f| f.dim >= 0)
                        .map(|f| (face_label(&f.vertices), zonotope_face_word(&meta, &f.vertices)))
                        .collect();
                    iso_check(&complex, &oriental, &corr)?
                        && steiner_verdict(&complex).is_strong_steiner()
                }
            };
            println!("{}", if ok { "ISO OK" } else { "ISO FAIL" });
            Ok(ok)
        }
        Command::Bruhat { n, d, count_only, verify_cubillages } => {
            let poset = enumerate_bruhat(n, d)?;
            if count_only {
                println!("{}", json!({"n": n, "d": d, "count": poset.elements.len()}));
                return Ok(true);
            }
            let mut ok = true;
            let mut elements = Vec::new();
            for (i, u) in poset.elements.iter().enumerate() {
                let mut entry = serde_json::Map::new();
                entry.insert(
                    "members".into(),
                    json!(u.members.iter().cloned().collect::<Vec<_>>()),
                );
                entry.insert("covers".into(), json!(poset.covers[i]));
                if verify_cubillages {
                    let cub = phi_to_cubillage(n, d, u);
                    let tiles: Vec<_> = cub
                        .tiles
                        .iter()
                        .map(|(l, a)| json!({"generators": l, "initial": a}))
                        .collect();
                    let valid = verify_cubillage(&cub)?;
                    ok &= valid;
                    entry.insert("cubillage".into(), json!(tiles));
                    entry.insert("tiles_zonotope".into(), json!(valid));
                }
                elements.push(serde_json::Value::Object(entry));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "n": n, "d": d, "count": poset.elements.len(), "elements": elements,
                }))
                .unwrap()
            );
            Ok(ok)
        }
        Command::Chirotope { file, frame, flag } => {
            let json_in = read_polytope(&file)?;
            let cfg = json_in.config()?;
            if flag {
                let spec = if frame == "canonical" && json_in.frame.is_some() {
                    "attached"
                } else {
                    &frame
                };
                let frame = parse_frame(spec, &json_in, cfg.ambient_dim)?;
                let fp = FramedPolytope::new(cfg, frame)?;
                let fc = flag_chirotope(&fp)?;
                let levels: Vec<ChirotopeJson> =
                    fc.levels.iter().map(ChirotopeJson::from_chirotope).collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "levels": levels,
                        "uniform": fc.is_uniform(),
                        "acyclic": fc.is_acyclic(),
                    }))
                    .unwrap()
                );
                Ok(fc.is_uniform())
            } else {
                let chi = polyframe::chirotope::chirotope_of_points(&cfg)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&ChirotopeJson::from_chirotope(&chi)).unwrap()
                );
                Ok(true)
            }
        }
        Command::Molecule { file, frame } => {
            let fp = load(&file, &frame)?;
            fp.require_admissible()?;
            let orient = f_orientation(&fp)?;
            let ogp = poset_orientation(&fp.lattice, &orient)?;
            let mut ok = true;
            let mut faces = Vec::new();
            for id in 0..fp.lattice.faces.len() {
                let dim = fp.lattice.faces[id].dim;
                if dim < 1 {
                    continue;
                }
                let mut pass = true;
                for k in 0..dim {
                    for side in [StSide::Source, StSide::Target] {
                        if layering(&fp, &ogp, id, k, side).is_err() {
                            pass = false;
                        }
                    }
                }
                ok &= pass;
                faces.push(json!({
                    "face": fp.lattice.faces[id].vertices,
                    "boundaries_are_molecules": pass,
                }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"passed": ok, "faces": faces})).unwrap()
            );
            Ok(ok)
        }
        Command::Rdc { file, frame } => {
            let fp = load(&file, &frame)?;
            let report = rdc_check(&fp)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "passed": report.passed,
                    "failures": report.failures,
                }))
                .unwrap()
            );
            Ok(report.passed)
        }
        Command::Experiment { kind, dims, samples, seed, out, csv } => {
            let (lo, hi) = dims
                .split_once("..")
                .ok_or_else(|| Error::Parameter("dims must look like A..B".into()))?;
            let spec = ExperimentSpec {
                kind: kind.into(),
                dim_lo: lo
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad dimension {lo}")))?,
                dim_hi: hi
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad dimension {hi}")))?,
                samples,
                seed,
            };
            let report = run_experiment(&spec)?;
            let text = serde_json::to_string_pretty(&report).unwrap();
            match &out {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| Error::Parse(format!("cannot write {path}: {e}")))?,
                None => println!("{text}"),
            }
            if let Some(path) = csv {
                std::fs::write(&path, report_csv(&report))
                    .map_err(|e| Error::Parse(format!("cannot write {path}: {e}")))?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
