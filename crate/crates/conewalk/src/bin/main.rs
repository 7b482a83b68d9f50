//! conewalk: exact lattice-theoretic cone machinery on the command line.
//!
//! All numeric output is exact, serialized as "p/q" strings. Exit codes:
//! 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use conewalk::cones::{fundamental_exceptional_chamber, subdivide, Cone};
use conewalk::corpus;
use conewalk::domains::{
    ball, dirichlet_domain, rank2_boundary_rays, rank2_isometry_generator, Rank2Rays, Surd,
};
use conewalk::error::Error;
use conewalk::fold::{folded_weyl_order, AdeType, FoldOptions, Tau};
use conewalk::hunt::{enum_negative, walls_meeting, HuntQuery};
use conewalk::io::{parse_q, q_to_string, resolve_vector, ConeFile, LatticeFile};
use conewalk::lattice::Lattice;
use conewalk::mat::{primitive_scale, q_to_z, z_to_q, QVec, ZMat, Z};
use conewalk::roots::{
    chamber_walk, is_integral_reflection, reflection, weyl_factorize, Root, WeylWord,
};
use conewalk::zariski::zariski_decompose;
use conewalk::Q;

#[derive(Parser)]
#[command(name = "conewalk", version, about = "Exact lattice, reflection, cone, and fundamental-domain computations")]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pairing of two vectors under the lattice form
    Pair {
        #[arg(long)]
        lattice: PathBuf,
        /// Vector: a name from the lattice file or inline "a,b,c"
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Signature (plus, minus) of the form
    Signature {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Map a vector to its dual covector (or back with --from)
    Dual {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        v: String,
        /// Interpret v as a covector and map it back to the lattice
        #[arg(long)]
        from: bool,
    },
    /// Divisibility: gcd of the pairings of v with the whole lattice
    Divisibility {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        v: String,
    },
    /// Saturated orthogonal complement of a spanning set
    Complement {
        #[arg(long)]
        lattice: PathBuf,
        /// Vectors separated by ';', each a name or inline coordinates
        #[arg(long)]
        span: String,
    },
    /// Apply the reflection in a negative vector e to v
    Reflect {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        e: String,
        #[arg(long)]
        v: String,
    },
    /// Whether the reflection in e is integral
    Integral {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        e: String,
    },
    /// Walk alpha into the fundamental chamber of the named roots
    Walk {
        #[arg(long)]
        lattice: PathBuf,
        /// Comma-separated root names from the lattice file
        #[arg(long)]
        roots: String,
        #[arg(long)]
        alpha: String,
        /// Reference positive vector
        #[arg(long)]
        h: String,
    },
    /// Factor an isometry g = w * b with w a Weyl word, b chamber-preserving
    Factorize {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        roots: String,
        /// Integer matrix, rows separated by ';': "1,0;0,1"
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Order of the subgroup of an ADE Weyl group fixed by a diagram automorphism
    Fold {
        /// ADE type, e.g. A2, D4, E6
        #[arg(long = "type")]
        ade_type: String,
        /// Diagram automorphism: identity, flip, or triality
        #[arg(long)]
        tau: String,
        /// Allow Weyl groups above the default size guard
        #[arg(long)]
        allow_large: bool,
        /// Enumerate with reversed generator order (cross-check)
        #[arg(long)]
        reverse: bool,
    },
    /// Fundamental exceptional chamber of the named roots as halfspaces
    Fe {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        roots: String,
        #[arg(long)]
        h: String,
    },
    /// Subdivide a cone by the walls of the named roots
    Subdivide {
        #[arg(long)]
        lattice: PathBuf,
        /// Cone file (generators + reference)
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        walls: String,
    },
    /// Zariski decomposition of a class against the named roots
    Zariski {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        d: String,
        #[arg(long)]
        roots: String,
    },
    /// Enumerate primitive negative vectors of bounded square and height
    Hunt {
        #[arg(long)]
        lattice: PathBuf,
        /// Base point (positive square), name or inline coordinates
        #[arg(long)]
        h: String,
        /// Square bound B > 0: enumerate -B <= q(v) < 0
        #[arg(long = "B")]
        square_bound: String,
        /// Height bound, a rational or "auto" (requires --cone)
        #[arg(long = "M", default_value = "auto")]
        height_bound: String,
        /// Cone file; with it, keep only walls meeting the cone
        #[arg(long)]
        cone: Option<PathBuf>,
        /// Widen the automatic bound by this rational factor
        #[arg(long)]
        widen: Option<String>,
    },
    /// Dirichlet domain of a generated group at a base point
    Domain {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        x0: String,
        /// Comma-separated generator specs: "refl:NAME" or "auto"
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Rank-2 dichotomy: boundary rays and (optionally) an infinite-order isometry
    Rank2 {
        #[arg(long)]
        lattice: PathBuf,
        /// Also search for an infinite-order isometry generator
        #[arg(long)]
        generator: bool,
        /// Matrix entry bound for the generator search
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
    /// Shipped example corpus
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// List case names with their descriptions
    List,
    /// Run one case (or all) and print its asserted output
    Run {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

enum Output {
    One(Value),
    Many(Vec<Value>),
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => print_output(out, cli.pretty),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn print_output(out: Output, pretty: bool) {
    match (out, pretty) {
        (Output::One(v), false) => println!("{}", serde_json::to_string(&v).unwrap()),
        (Output::One(v), true) => println!("{}", serde_json::to_string_pretty(&v).unwrap()),
        (Output::Many(vs), false) => {
            for v in vs {
                println!("{}", serde_json::to_string(&v).unwrap());
            }
        }
        (Output::Many(vs), true) => print_table(&vs),
    }
}

fn print_table(vs: &[Value]) {
    let keys: Vec<String> = match vs.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => Vec::new(),
    };
    if keys.is_empty() {
        for v in vs {
            println!("{}", serde_json::to_string_pretty(v).unwrap());
        }
        return;
    }
    println!("{}", keys.join("\t"));
    for v in vs {
        let row: Vec<String> = keys
            .iter()
            .map(|k| match v.get(k) {
                Some(Value::String(s)) => s.clone(),
                Some(x) => serde_json::to_string(x).unwrap(),
                None => String::new(),
            })
            .collect();
        println!("{}", row.join("\t"));
    }
}

type Named = BTreeMap<String, QVec>;

fn load(path: &PathBuf) -> conewalk::Result<(Lattice, Named)> {
    LatticeFile::load(path)
}

fn qs(q: &Q) -> Value {
    Value::String(q_to_string(q))
}

fn qvec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(qs).collect())
}

fn zvec_json(v: &[Z]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn int_vector(v: &[Q], what: &str) -> conewalk::Result<Vec<Z>> {
    q_to_z(v).ok_or_else(|| Error::Parse(format!("{what} must be integral")))
}

fn parse_zmat(s: &str, rank: usize) -> conewalk::Result<ZMat> {
    let rows: Vec<Vec<Z>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    Z::from_str(e.trim())
                        .map_err(|_| Error::Parse(format!("bad integer {e:?}")))
                })
                .collect()
        })
        .collect::<conewalk::Result<_>>()?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(Error::Parse(format!("matrix must be {rank}x{rank}")));
    }
    Ok(ZMat::from_rows(rows))
}

fn zmat_json(m: &ZMat, rank: usize) -> Value {
    Value::Array(
        (0..rank)
            .map(|i| {
                Value::Array(
                    (0..rank)
                        .map(|j| Value::String(m[(i, j)].to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn resolve_roots(lat: &Lattice, named: &Named, spec: &str) -> conewalk::Result<Vec<Root>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|name| {
            let v = resolve_vector(name.trim(), named, lat.rank())?;
            Root::new(lat, v)
        })
        .collect()
}

/// Name a word root by matching its primitive vector (either sign) against
/// the lattice file's named vectors; fall back to coordinates.
fn root_name(named: &Named, v: &[Q]) -> String {
    let p = primitive_scale(v);
    let np: Vec<Z> = p.iter().map(|x| -x).collect();
    for (name, u) in named {
        let pu = primitive_scale(u);
        if pu == p || pu == np {
            return name.clone();
        }
    }
    v.iter().map(q_to_string).collect::<Vec<_>>().join(",")
}

fn word_json(named: &Named, word: &WeylWord) -> Value {
    Value::Array(
        word.roots
            .iter()
            .map(|r| Value::String(root_name(named, r.vector())))
            .collect(),
    )
}

fn cone_json(cone: &Cone) -> Value {
    json!({
        "generators": cone.generators.iter().map(|g| qvec_json(g)).collect::<Vec<_>>(),
        "halfspaces": cone.halfspaces.iter().map(|h| qvec_json(&h.normal)).collect::<Vec<_>>(),
        "strict": cone.halfspaces.iter().map(|h| h.strict).collect::<Vec<_>>(),
        "reference": qvec_json(&cone.reference),
        "positive_marker": cone.positive_marker,
    })
}

fn run(cmd: Cmd) -> conewalk::Result<Output> {
    match cmd {
        Cmd::Pair { lattice, u, v } => {
            let (lat, named) = load(&lattice)?;
            let u = resolve_vector(&u, &named, lat.rank())?;
            let v = resolve_vector(&v, &named, lat.rank())?;
            Ok(Output::One(json!({"pair": qs(&lat.pair(&u, &v)?)})))
        }
        Cmd::Signature { lattice } => {
            let (lat, _) = load(&lattice)?;
            let (plus, minus) = lat.signature();
            Ok(Output::One(json!({"plus": plus, "minus": minus})))
        }
        Cmd::Dual { lattice, v, from } => {
            let (lat, named) = load(&lattice)?;
            let v = resolve_vector(&v, &named, lat.rank())?;
            let image = if from { lat.from_dual(&v)? } else { lat.to_dual(&v)? };
            Ok(Output::One(json!({"coords": qvec_json(&image)})))
        }
        Cmd::Divisibility { lattice, v } => {
            let (lat, named) = load(&lattice)?;
            let v = resolve_vector(&v, &named, lat.rank())?;
            let vz = int_vector(&v, "vector")?;
            Ok(Output::One(json!({
                "divisibility": lat.divisibility(&vz)?.to_string(),
                "primitive": lat.is_primitive(&vz),
            })))
        }
        Cmd::Complement { lattice, span } => {
            let (lat, named) = load(&lattice)?;
            let vectors: Vec<Vec<Z>> = span
                .split(';')
                .map(|s| {
                    let v = resolve_vector(s.trim(), &named, lat.rank())?;
                    int_vector(&v, "span vector")
                })
                .collect::<conewalk::Result<_>>()?;
            let sub = lat.orthogonal_complement(&vectors)?;
            let k = sub.gram.rows;
            let basis: Vec<Value> = (0..k)
                .map(|j| {
                    let col: Vec<Z> = (0..lat.rank()).map(|i| sub.basis[(i, j)].clone()).collect();
                    zvec_json(&col)
                })
                .collect();
            let gram: Vec<Value> = (0..k)
                .map(|i| {
                    Value::Array((0..k).map(|j| qs(&sub.gram[(i, j)])).collect())
                })
                .collect();
            Ok(Output::One(json!({"rank": k, "basis": basis, "gram": gram})))
        }
        Cmd::Reflect { lattice, e, v } => {
            let (lat, named) = load(&lattice)?;
            let e = resolve_vector(&e, &named, lat.rank())?;
            let v = resolve_vector(&v, &named, lat.rank())?;
            let image = reflection(&lat, &e)?.mul_vec(&v);
            Ok(Output::One(json!({"image": qvec_json(&image)})))
        }
        Cmd::Integral { lattice, e } => {
            let (lat, named) = load(&lattice)?;
            let e = resolve_vector(&e, &named, lat.rank())?;
            Ok(Output::One(json!({
                "integral": is_integral_reflection(&lat, &e)?,
            })))
        }
        Cmd::Walk { lattice, roots, alpha, h } => {
            let (lat, named) = load(&lattice)?;
            let roots = resolve_roots(&lat, &named, &roots)?;
            let alpha = resolve_vector(&alpha, &named, lat.rank())?;
            let h = resolve_vector(&h, &named, lat.rank())?;
            let (word, rep) = chamber_walk(&lat, &roots, &alpha, &h)?;
            Ok(Output::One(json!({
                "word": word_json(&named, &word),
                "length": word.len(),
                "rep": qvec_json(&rep),
            })))
        }
        Cmd::Factorize { lattice, roots, g, h } => {
            let (lat, named) = load(&lattice)?;
            let roots = resolve_roots(&lat, &named, &roots)?;
            let g = parse_zmat(&g, lat.rank())?;
            let h = resolve_vector(&h, &named, lat.rank())?;
            let (word, b) = weyl_factorize(&lat, &roots, &g, &h)?;
            let n = lat.rank();
            let b_rows: Vec<Value> = (0..n)
                .map(|i| Value::Array((0..n).map(|j| qs(&b[(i, j)])).collect()))
                .collect();
            Ok(Output::One(json!({
                "word": word_json(&named, &word),
                "b": b_rows,
            })))
        }
        Cmd::Fold { ade_type, tau, allow_large, reverse } => {
            let t = AdeType::parse(&ade_type)?;
            let tau = Tau::parse(&tau)?;
            let opts = FoldOptions { reverse_bfs: reverse, allow_large };
            let order = folded_weyl_order(t, tau, &opts)?;
            Ok(Output::One(json!({
                "type": ade_type,
                "tau": format!("{tau:?}").to_lowercase(),
                "fixed_order": order,
                "weyl_order": t.weyl_order(),
            })))
        }
        Cmd::Fe { lattice, roots, h } => {
            let (lat, named) = load(&lattice)?;
            let roots = resolve_roots(&lat, &named, &roots)?;
            let h = resolve_vector(&h, &named, lat.rank())?;
            let fe = fundamental_exceptional_chamber(&lat, &roots, &h)?;
            Ok(Output::One(cone_json(&fe)))
        }
        Cmd::Subdivide { lattice, cone, walls } => {
            let (lat, named) = load(&lattice)?;
            let cone = ConeFile::load(&cone, &lat)?;
            let walls = resolve_roots(&lat, &named, &walls)?;
            let pieces = subdivide(&lat, &cone, &walls)?;
            Ok(Output::Many(
                pieces
                    .iter()
                    .map(|p| {
                        json!({
                            "signs": p.signs,
                            "generators": p
                                .cone
                                .generators
                                .iter()
                                .map(|g| qvec_json(g))
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            ))
        }
        Cmd::Zariski { lattice, d, roots } => {
            let (lat, named) = load(&lattice)?;
            let root_names: Vec<String> =
                roots.split(',').map(|s| s.trim().to_string()).collect();
            let roots = resolve_roots(&lat, &named, &roots)?;
            let d = resolve_vector(&d, &named, lat.rank())?;
            let dec = zariski_decompose(&lat, &d, &roots)?;
            let mut coeffs = serde_json::Map::new();
            for (name, c) in root_names.iter().zip(&dec.coefficients) {
                coeffs.insert(name.clone(), qs(c));
            }
            Ok(Output::One(json!({
                "P": qvec_json(&dec.positive),
                "N_coeffs": coeffs,
                "support": dec.support.iter().map(|&i| root_names[i].clone()).collect::<Vec<_>>(),
                "qP": qs(&lat.square(&dec.positive)?),
                "qD": qs(&lat.square(&d)?),
            })))
        }
        Cmd::Hunt { lattice, h, square_bound, height_bound, cone, widen } => {
            let (lat, named) = load(&lattice)?;
            let h = resolve_vector(&h, &named, lat.rank())?;
            let hz = int_vector(&h, "base point")?;
            let b = parse_q(&square_bound)?;
            let widen = widen.as_deref().map(parse_q).transpose()?;
            let cone = cone
                .map(|p| ConeFile::load(&p, &lat))
                .transpose()?;
            let vectors = if height_bound == "auto" {
                let cone = cone
                    .as_ref()
                    .ok_or_else(|| Error::Parse("--M auto requires --cone".into()))?;
                walls_meeting(&lat, cone, &hz, &b, widen.as_ref())?
            } else {
                let m = parse_q(&height_bound)?;
                let query = HuntQuery::new(&lat, hz.clone(), b, m)?;
                let all = enum_negative(&lat, &query)?;
                match &cone {
                    Some(c) => {
                        let mut kept = Vec::new();
                        for v in all {
                            if conewalk::cones::wall_meets_cone(&lat, &z_to_q(&v), c)? {
                                kept.push(v);
                            }
                        }
                        kept
                    }
                    None => all,
                }
            };
            let hq = z_to_q(&hz);
            Ok(Output::Many(
                vectors
                    .iter()
                    .map(|v| {
                        let vq = z_to_q(v);
                        Ok(json!({
                            "coords": zvec_json(v),
                            "square": qs(&lat.square(&vq)?),
                            "height": qs(&lat.pair(&vq, &hq)?),
                        }))
                    })
                    .collect::<conewalk::Result<_>>()?,
            ))
        }
        Cmd::Domain { lattice, x0, gens, radius } => {
            let (lat, named) = load(&lattice)?;
            let x0 = resolve_vector(&x0, &named, lat.rank())?;
            let mut generators: Vec<ZMat> = Vec::new();
            for spec in gens.split(',').filter(|s| !s.trim().is_empty()) {
                let spec = spec.trim();
                if let Some(name) = spec.strip_prefix("refl:") {
                    let e = resolve_vector(name, &named, lat.rank())?;
                    if !is_integral_reflection(&lat, &e)? {
                        return Err(Error::NotIntegralGram);
                    }
                    let m = reflection(&lat, &e)?;
                    let n = lat.rank();
                    let rows: Vec<Vec<Z>> = (0..n)
                        .map(|i| (0..n).map(|j| m[(i, j)].to_integer()).collect())
                        .collect();
                    generators.push(ZMat::from_rows(rows));
                } else if spec == "auto" {
                    generators.push(rank2_isometry_generator(&lat, 10)?);
                } else {
                    generators.push(parse_zmat(spec, lat.rank())?);
                }
            }
            let group = ball(&lat, &generators, radius)?;
            let domain = dirichlet_domain(&lat, &x0, &group)?;
            Ok(Output::One(json!({
                "base": qvec_json(&domain.base),
                "active_normals": domain
                    .active_normals()
                    .iter()
                    .map(|n| qvec_json(n))
                    .collect::<Vec<_>>(),
                "halfspace_count": domain.halfspaces.len(),
                "reduced": domain.reduced,
                "stabilized": domain.stabilized,
                "ball_size": group.elements.len(),
            })))
        }
        Cmd::Rank2 { lattice, generator, bound } => {
            let (lat, _) = load(&lattice)?;
            let rays = rank2_boundary_rays(&lat)?;
            let surd_json = |s: &Surd| {
                json!({
                    "rational": qs(&s.rational),
                    "coefficient": qs(&s.coefficient),
                    "radicand": s.radicand.to_string(),
                })
            };
            let mut out = match &rays {
                Rank2Rays::Rational(r1, r2) => json!({
                    "rational": true,
                    "rays": [zvec_json(r1), zvec_json(r2)],
                }),
                Rank2Rays::Irrational(s1, s2) => json!({
                    "rational": false,
                    "ray_slopes": [surd_json(s1), surd_json(s2)],
                }),
            };
            if generator {
                let g = rank2_isometry_generator(&lat, bound)?;
                out["generator"] = zmat_json(&g, 2);
            }
            Ok(Output::One(out))
        }
        Cmd::Corpus { action } => match action {
            CorpusCmd::List => Ok(Output::Many(
                corpus::CASE_NAMES
                    .iter()
                    .map(|&name| {
                        Ok(json!({"name": name, "note": corpus::case_note(name)?}))
                    })
                    .collect::<conewalk::Result<_>>()?,
            )),
            CorpusCmd::Run { name, all } => {
                if all {
                    return Ok(Output::One(corpus::run_all()?));
                }
                let name = name
                    .ok_or_else(|| Error::Parse("give a case name or --all".into()))?;
                Ok(Output::One(corpus::run_case(&name)?))
            }
        },
    }
}
