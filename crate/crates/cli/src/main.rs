use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtopo::grid::{product, wedge};
use dtopo::homology::{
    build_clique_complex, cohomology_basis, cohomology_with, cup, homology_with,
    induced_cochain_map, is_coboundary, nilpotency, ChainComplex, Cochain, Coeff, VertexOrder,
};
use dtopo::homotopy::{
    find_contraction, verify_contraction, verify_homotopy, ContractionCertificate,
    ContractionSearch, HomotopyScript, DEFAULT_BUDGET,
};
use dtopo::motion::{
    all_tuples, group_check, synthesize_spider_section, tc_is_one, tcn_upper_via_group,
    verify_cat_witness, verify_cover, verify_spider_section, verify_tcn_witness, NotOne,
    PathAdjacency, SectionPart, SynthesisOptions, SynthesisOutcome, TcOne, TcnWitness,
};
use dtopo::reproduce::{reproduce, ReproduceOptions, TARGETS};
use dtopo::surface::{
    classify_neighbors, export_obj, genus_from_counts, is_closed_surface, is_separating_surface,
};
use dtopo::{fixtures, io, DigitalImage, DigitalMap, Exec, Point};

#[derive(Parser)]
#[command(
    name = "dtopo",
    version,
    about = "Invariants and certificate checks for finite digital images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Search budget (nodes or maps visited).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Leg length for rule synthesis (default: diameter + 4).
    #[arg(long, global = true)]
    max_path_len: Option<usize>,
    /// Coefficients: int, q or p<prime>.
    #[arg(long, global = true, default_value = "int")]
    coeff: Coeff,
    /// When two paths count as adjacent.
    #[arg(long, global = true, value_enum, default_value_t = PathMode::Adjacent)]
    path_adjacency: PathMode,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathMode {
    /// Equal or adjacent at every synchronized time step.
    Adjacent,
    /// Within one component at every time step.
    Component,
}

impl Common {
    fn mode(&self) -> PathAdjacency {
        match self.path_adjacency {
            PathMode::Adjacent => PathAdjacency::Adjacent,
            PathMode::Component => PathAdjacency::SameComponent,
        }
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn synthesis(&self) -> SynthesisOptions {
        SynthesisOptions {
            max_len: self.max_path_len,
            budget: self.budget,
            mode: self.mode(),
            exec: self.exec(),
            ..SynthesisOptions::default()
        }
    }
}

/// Images are `@name` for a built-in fixture or a path to an image file.
#[derive(Subcommand)]
enum Command {
    /// Size, adjacency, connectivity and diameter.
    Info { image: String },
    /// Connected components, one per line.
    Components { image: String },
    /// Betti numbers over the chosen coefficients.
    Betti {
        image: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Homology groups of the clique complex.
    Homology {
        image: String,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Cohomology groups of the clique complex.
    Cohomology {
        image: String,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Vertex order, smallest first: labels or comma-separated coordinates, separated by spaces or `;`.
        #[arg(long)]
        order: Option<String>,
    },
    /// Cup product of two basis classes, or the cup length.
    Cup {
        image: String,
        /// First factor as `<degree>:<basis index>`.
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
    },
    /// Ranks and kernels of the map induced on cohomology.
    InducedMap {
        domain: String,
        codomain: String,
        map: PathBuf,
    },
    /// Neighbour-count table and genus of a closed 6-surface.
    Genus { image: String },
    /// Closed-surface and separation checks.
    SurfaceCheck { image: String },
    /// Product image with the strong-product adjacency.
    Product {
        left: String,
        right: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Wedge of two images sharing exactly one point.
    Wedge {
        left: String,
        right: String,
        /// The common point, comma-separated coordinates.
        #[arg(long)]
        at: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Checks a homotopy script; with --contraction, that it ends in a constant map.
    VerifyHomotopy {
        domain: String,
        codomain: String,
        script: PathBuf,
        #[arg(long)]
        contraction: bool,
    },
    /// Searches a contraction and writes its script.
    ContractSearch {
        image: String,
        #[arg(long, default_value_t = 64)]
        max_steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Checks that the parts of a witness cover X^n.
    VerifyCover { image: String, witness: PathBuf },
    /// Checks the rule on every part of a witness, ignoring coverage.
    VerifySection { image: String, witness: PathBuf },
    /// Full check of a TC witness; prints the certified bound.
    TcBound { image: String, witness: PathBuf },
    /// Decides whether TC(X) = 1.
    Tc1Decide {
        image: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Full check of a TC_n witness.
    TcnVerify { image: String, witness: PathBuf },
    /// Checks an LS-category witness.
    CatVerify { image: String, witness: PathBuf },
    /// Checks a group law; with --n and --cat, bounds TC_n through cat(H^(n-1)).
    GroupCheck {
        image: String,
        group: PathBuf,
        #[arg(long, requires = "cat")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        cat: Option<PathBuf>,
    },
    /// Searches a rule on all of X^n, or on one part of a witness.
    SynthesizeSection {
        image: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Take the members from this witness.
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Part of --cover to use, from 1.
        #[arg(long, default_value_t = 1)]
        part: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One unit cube per point as an OBJ mesh, or a CSV point list.
    ExportObj {
        image: String,
        #[arg(long)]
        csv: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs a canned pipeline over the shipped fixtures and certificates.
    Reproduce {
        /// One of the target ids, or `all`.
        target: String,
        /// Also run the searchers.
        #[arg(long)]
        search: bool,
    },
}

/// Malformed input; exits with status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<bool, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.common) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(arg: &str) -> Result<DigitalImage, InputError> {
    if arg.starts_with('@') {
        return Ok(fixtures::lookup(arg)?);
    }
    let text = read(Path::new(arg))?;
    io::read_image(&text).map_err(|e| InputError(format!("{arg}: {e}")))
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: dtopo::Result<T>) -> Result<T, InputError> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), InputError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn complex(x: &DigitalImage, max_dim: Option<usize>) -> ChainComplex {
    build_clique_complex(
        x,
        max_dim.unwrap_or(x.dim() + 1),
        &VertexOrder::lexicographic(x),
    )
}

fn point_arg(x: &DigitalImage, s: &str) -> Result<usize, InputError> {
    if let Some(i) = x.find_label(s) {
        return Ok(i);
    }
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| InputError(format!("`{s}` is neither a label nor a point")))?;
    Ok(x.require_index(&Point::new(coords))?)
}

fn class_arg(s: &str) -> Result<(usize, usize), InputError> {
    let (q, i) = s
        .split_once(':')
        .ok_or_else(|| InputError(format!("expected <degree>:<index>, got `{s}`")))?;
    Ok((q.parse()?, i.parse()?))
}

fn verdict<T, E: std::fmt::Display>(r: Result<T, E>, ok: impl FnOnce(T) -> String) -> Run {
    match r {
        Ok(v) => {
            println!("{}", ok(v));
            Ok(true)
        }
        Err(e) => {
            println!("FAILED: {e}");
            Ok(false)
        }
    }
}

fn cochain_text(k: &ChainComplex, x: &DigitalImage, c: &Cochain) -> String {
    let terms: Vec<String> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(s, v)| {
            let pts: Vec<String> = k
                .simplex(c.degree(), s)
                .iter()
                .map(|&i| x.describe(i))
                .collect();
            format!("{v}*<{}>", pts.join(" "))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn run(command: Command, c: &Common) -> Run {
    match command {
        Command::Info { image } => {
            let x = load(&image)?;
            println!("points: {}", x.len());
            println!("dimension: {}", x.dim());
            println!("adjacency: {}", x.adjacency());
            println!("edges: {}", x.edge_count());
            println!("components: {}", x.components().len());
            match x.diameter() {
                Some(d) => println!("diameter: {d}"),
                None => println!("diameter: infinite"),
            }
            println!(
                "simple closed curve: {}",
                dtopo::grid::is_simple_closed_curve(&x)
            );
            Ok(true)
        }
        Command::Components { image } => {
            let x = load(&image)?;
            let comps = x.components();
            println!("{} component(s)", comps.len());
            for comp in comps {
                let pts: Vec<String> = comp.iter().map(|&i| x.describe(i)).collect();
                println!("{}", pts.join(" "));
            }
            Ok(true)
        }
        Command::Betti { image, max_dim } => {
            let x = load(&image)?;
            let top = max_dim.unwrap_or(x.dim());
            let k = complex(&x, Some(top + 1));
            let h = homology_with(&k, c.coeff)?;
            for q in 0..=top {
                println!("b_{q} = {}", h.rank(q));
            }
            Ok(true)
        }
        Command::Homology { image, max_dim } => {
            let x = load(&image)?;
            print!("{}", homology_with(&complex(&x, max_dim), c.coeff)?);
            Ok(true)
        }
        Command::Cohomology {
            image,
            max_dim,
            order,
        } => {
            let x = load(&image)?;
            let max_dim = max_dim.unwrap_or(x.dim() + 1);
            let order = match order {
                None => VertexOrder::lexicographic(&x),
                Some(s) => {
                    let idx = s
                        .split_whitespace()
                        .flat_map(|w| w.split(';'))
                        .map(|w| point_arg(&x, w))
                        .collect::<Result<Vec<_>, _>>()?;
                    VertexOrder::from_indices(&x, &idx)?
                }
            };
            let k = build_clique_complex(&x, max_dim, &order);
            print!("{}", cohomology_with(&k, c.coeff)?);
            Ok(true)
        }
        Command::Cup { image, left, right } => {
            let x = load(&image)?;
            let k = complex(&x, None);
            match (left, right) {
                (Some(l), Some(r)) => {
                    let (p, i) = class_arg(&l)?;
                    let (q, j) = class_arg(&r)?;
                    let bp = cohomology_basis(&k, p, c.coeff)?;
                    let bq = cohomology_basis(&k, q, c.coeff)?;
                    let a = bp.get(i).ok_or_else(|| {
                        InputError(format!("H^{p} has {} basis classes", bp.len()))
                    })?;
                    let b = bq.get(j).ok_or_else(|| {
                        InputError(format!("H^{q} has {} basis classes", bq.len()))
                    })?;
                    let prod = cup(&k, a, b)?;
                    println!("cochain: {}", cochain_text(&k, &x, &prod));
                    let zero = prod.degree() > k.top_dim() || is_coboundary(&k, &prod, c.coeff)?;
                    println!("class: {}", if zero { "zero" } else { "nonzero" });
                }
                _ => {
                    let n = nilpotency(&k, c.coeff, c.budget)?;
                    println!("cup length: {}", n.length);
                    if !n.exhausted {
                        println!("budget reached; the cup length may be larger");
                    }
                }
            }
            Ok(true)
        }
        Command::InducedMap {
            domain,
            codomain,
            map,
        } => {
            let x = load(&domain)?;
            let y = load(&codomain)?;
            let table = with_file(&map, io::read_map(&x, &y, &read(&map)?))?;
            let f = DigitalMap::new(&x, &y, table)?;
            let kx = complex(&x, None);
            let ky = complex(&y, None);
            match induced_cochain_map(&f, &kx, &ky, c.coeff) {
                Ok(m) => {
                    for q in 0..m.ranks.len() {
                        println!(
                            "H^{q}: source dim {}, target dim {}, rank {}, kernel {}",
                            m.source_dims[q],
                            m.target_dims[q],
                            m.ranks[q],
                            m.kernel_rank(q)
                        );
                    }
                    Ok(true)
                }
                Err(e @ (dtopo::Error::NotContinuous(_) | dtopo::Error::NotSimplicial(_))) => {
                    println!("FAILED: {e}");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Genus { image } => {
            let x = load(&image)?;
            let counts = classify_neighbors(&x);
            for i in 3..=6 {
                println!("M{i} = {}", counts.m(i));
            }
            if !counts.leftover.is_empty() {
                println!("other = {}", counts.leftover.len());
            }
            if !is_closed_surface(&x)? {
                println!("FAILED: not a closed surface");
                return Ok(false);
            }
            verdict(genus_from_counts(&counts), |g| format!("genus = {g}"))
        }
        Command::SurfaceCheck { image } => {
            let x = load(&image)?;
            let closed = is_closed_surface(&x)?;
            println!("closed surface: {closed}");
            println!("separating: {}", is_separating_surface(&x)?);
            Ok(closed)
        }
        Command::Product {
            left,
            right,
            output,
        } => {
            let p = product(&load(&left)?, &load(&right)?);
            emit(output.as_deref(), &io::write_image(&p))?;
            Ok(true)
        }
        Command::Wedge {
            left,
            right,
            at,
            output,
        } => {
            let x = load(&left)?;
            let y = load(&right)?;
            let coords = at
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()?;
            match wedge(&x, &y, &Point::new(coords)) {
                Ok(w) => {
                    emit(output.as_deref(), &io::write_image(&w))?;
                    Ok(true)
                }
                Err(e @ dtopo::Error::InvalidWedge(_)) => {
                    println!("FAILED: {e}");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifyHomotopy {
            domain,
            codomain,
            script,
            contraction,
        } => {
            let x = load(&domain)?;
            let y = load(&codomain)?;
            let s = with_file(&script, io::read_script(&x, &y, &read(&script)?))?;
            let h = HomotopyScript::new(&x, &y, s.full_tables(x.len())?)?;
            if contraction {
                let target = h.steps().last().map(|t| t[0]).unwrap_or(0);
                let cert = ContractionCertificate::new(h, target)?;
                verdict(verify_contraction(&cert), |_| {
                    format!(
                        "contraction to {} in {} steps",
                        y.describe(cert.target),
                        cert.script.len()
                    )
                })
            } else {
                verdict(verify_homotopy(&h), |_| {
                    format!("homotopy of {} steps", h.len())
                })
            }
        }
        Command::ContractSearch {
            image,
            max_steps,
            output,
        } => {
            let x = load(&image)?;
            match find_contraction(&x, max_steps, c.budget) {
                ContractionSearch::Found(cert) => {
                    let members: Vec<usize> = (0..x.len()).collect();
                    let text = io::write_script(&x, &x, &members, cert.script.steps());
                    if output.is_some() {
                        println!(
                            "contractible: {} steps to {}",
                            cert.script.len(),
                            x.describe(cert.target)
                        );
                    }
                    emit(output.as_deref(), &text)?;
                    Ok(true)
                }
                ContractionSearch::NotContractible => {
                    println!("not contractible (exhaustive)");
                    Ok(false)
                }
                ContractionSearch::Unknown => {
                    println!("unknown: budget or step limit reached");
                    Ok(false)
                }
            }
        }
        Command::VerifyCover { image, witness } => {
            let x = load(&image)?;
            let w = with_file(&witness, io::read_tcn_witness(&x, &read(&witness)?))?;
            let members: Vec<Vec<Vec<usize>>> = w.parts.iter().map(|p| p.members.clone()).collect();
            verdict(verify_cover(&x, w.n, &members), |_| {
                format!("{} parts cover X^{}", w.parts.len(), w.n)
            })
        }
        Command::VerifySection { image, witness } => {
            let x = load(&image)?;
            let w = with_file(&witness, io::read_tcn_witness(&x, &read(&witness)?))?;
            let mut ok = true;
            for (i, p) in w.parts.iter().enumerate() {
                match verify_spider_section(&x, w.n, &p.members, &p.rules, c.mode(), c.exec()) {
                    Ok(()) => println!("part {}: ok ({} members)", i + 1, p.members.len()),
                    Err(e) => {
                        println!("part {}: FAILED: {e}", i + 1);
                        ok = false;
                    }
                }
            }
            Ok(ok)
        }
        Command::TcBound { image, witness } | Command::TcnVerify { image, witness } => {
            let x = load(&image)?;
            let w = with_file(&witness, io::read_tcn_witness(&x, &read(&witness)?))?;
            let label = if w.n == 2 {
                "TC".to_string()
            } else {
                format!("TC_{}", w.n)
            };
            verdict(verify_tcn_witness(&x, &w, c.mode()), |l| {
                format!("{label} <= {l}")
            })
        }
        Command::Tc1Decide { image, output } => {
            let x = load(&image)?;
            match tc_is_one(&x, &c.synthesis()) {
                TcOne::Yes(w) => {
                    println!("yes: TC = 1");
                    if let Some(p) = output {
                        emit(Some(&p), &io::write_tc_witness(&x, &w))?;
                    }
                    Ok(true)
                }
                TcOne::No(why) => {
                    match why {
                        NotOne::Disconnected => println!("no: not connected"),
                        NotOne::NotContractible => println!("no: not contractible (exhaustive)"),
                        NotOne::Obstruction(o) => {
                            println!("no: retracts onto a cycle of {} points", o.cycle.len());
                            if let Some(p) = output {
                                emit(Some(&p), &io::write_obstruction(&x, &o))?;
                            }
                        }
                    }
                    Ok(false)
                }
                TcOne::Unknown => {
                    println!("unknown: budget reached");
                    Ok(false)
                }
            }
        }
        Command::CatVerify { image, witness } => {
            let x = load(&image)?;
            let w = with_file(&witness, io::read_cat_witness(&x, &read(&witness)?))?;
            verdict(verify_cat_witness(&x, &w), |l| format!("cat <= {l}"))
        }
        Command::GroupCheck {
            image,
            group,
            n,
            cat,
        } => {
            let h = load(&image)?;
            let t = with_file(&group, io::read_group(&h, &read(&group)?))?;
            match (n, cat) {
                (Some(n), Some(cat)) => {
                    let base = dtopo::grid::power(&h, n.saturating_sub(1).max(1))?;
                    let w = with_file(&cat, io::read_cat_witness(&base, &read(&cat)?))?;
                    verdict(tcn_upper_via_group(&h, &t, n, &w), |l| {
                        format!("TC_{n} <= {l}")
                    })
                }
                _ => verdict(group_check(&h, &t), |_| "continuous group law".to_string()),
            }
        }
        Command::SynthesizeSection {
            image,
            arity,
            cover,
            part,
            output,
        } => {
            let x = load(&image)?;
            if arity < 2 {
                return Err(InputError(format!("arity must be at least 2, got {arity}")));
            }
            let members = match &cover {
                None => all_tuples(&x, arity),
                Some(p) => {
                    let w = with_file(p, io::read_tcn_witness(&x, &read(p)?))?;
                    if w.n != arity {
                        return Err(InputError(format!("{} has arity {}", p.display(), w.n)));
                    }
                    w.parts
                        .get(part.wrapping_sub(1))
                        .ok_or_else(|| {
                            InputError(format!("{} has {} parts", p.display(), w.parts.len()))
                        })?
                        .members
                        .clone()
                }
            };
            match synthesize_spider_section(&x, arity, &members, &c.synthesis()) {
                SynthesisOutcome::Found(rules) => {
                    let w = TcnWitness {
                        n: arity,
                        parts: vec![SectionPart { members, rules }],
                    };
                    if output.is_some() {
                        println!("found a rule on {} members", w.parts[0].members.len());
                    }
                    emit(output.as_deref(), &io::write_tcn_witness(&x, &w))?;
                    Ok(true)
                }
                SynthesisOutcome::Obstructed(s) => {
                    println!(
                        "no rule: varying coordinate {} of {} sweeps a non-contractible cycle",
                        s.coordinate + 1,
                        members_text(&x, &s.member)
                    );
                    Ok(false)
                }
                SynthesisOutcome::ExhaustedAtLength(l) => {
                    println!("no rule with legs of length {l}");
                    Ok(false)
                }
                SynthesisOutcome::Unknown => {
                    println!("unknown: budget reached");
                    Ok(false)
                }
            }
        }
        Command::ExportObj { image, csv, output } => {
            let x = load(&image)?;
            let text = if csv {
                let mut s = String::new();
                for p in x.points() {
                    s.push_str(&p.join(","));
                    s.push('\n');
                }
                s
            } else {
                export_obj(&x)?
            };
            emit(output.as_deref(), &text)?;
            Ok(true)
        }
        Command::Reproduce { target, search } => {
            let opts = ReproduceOptions {
                search,
                budget: Some(c.budget),
            };
            let targets: Vec<&str> = if target == "all" {
                TARGETS.to_vec()
            } else {
                vec![target.as_str()]
            };
            let mut pass = true;
            for (i, t) in targets.iter().enumerate() {
                let r = reproduce(t, &opts)?;
                if targets.len() > 1 {
                    if i > 0 {
                        println!();
                    }
                    println!("[{t}]");
                }
                print!("{r}");
                pass &= r.pass;
            }
            Ok(pass)
        }
    }
}

fn members_text(x: &DigitalImage, u: &[usize]) -> String {
    let pts: Vec<String> = u.iter().map(|&i| x.describe(i)).collect();
    format!("({})", pts.join(" "))
}
