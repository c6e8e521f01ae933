//! The `almostline` command line.

use std::fmt::Display;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{test_r2, test_s2, Verdict, Witness};
use crate::drawing::Drawing;
use crate::gen::{gen_gk, gen_random};
use crate::layout::{draw_augmented, LayoutError};
use crate::topo::{load_topology, validate, Surface, TopoGraph, SCHEMA_VERSION};
use crate::transform::{augment, build_lr, check_maximal, choose_external, safe_block_order, split, SplitDecomposition};
use crate::verify::{area_metrics, verify};

#[derive(Parser, Debug)]
#[command(name = "almostline", disable_version_flag = true)]
struct Cli {
    /// Print the schema version and exit.
    #[arg(long)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the graph invariants.
    Validate { file: String },
    /// Decide drawability: on the sphere, or in the plane when an external
    /// face is given.
    Test { file: String },
    /// Draw the graph with straight lines.
    Draw(DrawArgs),
    /// Decompose along the separating cycle.
    Split {
        file: String,
        #[arg(long)]
        dump: bool,
    },
    /// Check a drawing against a graph.
    Verify { graph: String, drawing: String },
    /// Generate an instance.
    Gen(GenArgs),
    /// Normalized area of the drawings of G_1..G_kmax, as CSV.
    BenchArea {
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Consistency test timings on growing G_k, as CSV.
    BenchTime {
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10000, 100000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
    },
}

#[derive(Args, Debug)]
struct DrawArgs {
    file: String,
    /// SVG output.
    #[arg(short, long, default_value = "-")]
    output: String,
    /// Coordinates as JSON.
    #[arg(long)]
    json: Option<String>,
    /// Keep the edges added before drawing.
    #[arg(long)]
    keep_augmentation: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "kind")]
struct GenKindArgs {
    #[arg(long, value_name = "K")]
    gk: Option<usize>,
    #[arg(long, value_name = "N")]
    random: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    kind: GenKindArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    consistent: bool,
    #[arg(short, long, default_value = "-")]
    output: String,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, code: i32, msg: impl Display) -> i32 {
        let line = msg.to_string().replace('\n', " ");
        let _ = writeln!(self.stderr, "error: {}", line.trim());
        code
    }

    fn read(&mut self, path: &str) -> Result<String, String> {
        let mut text = String::new();
        if path == "-" {
            self.stdin.read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
        } else {
            text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        }
        Ok(text)
    }

    fn write(&mut self, path: &str, text: &str) -> Result<(), String> {
        if path == "-" {
            self.stdout.write_all(text.as_bytes()).map_err(|e| format!("stdout: {e}"))
        } else {
            std::fs::write(path, text).map_err(|e| format!("{path}: {e}"))
        }
    }

    fn graph(&mut self, path: &str) -> Result<TopoGraph, String> {
        let text = self.read(path)?;
        load_topology(&text).map_err(|e| format!("{path}: {e}"))
    }
}

/// Runs the command line; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut io = Io { stdin, stdout, stderr };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(io.stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let head: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            return io.fail(2, head.join(" ").trim_start_matches("error: "));
        }
    };
    if cli.version {
        let _ = writeln!(io.stdout, "{SCHEMA_VERSION}");
        return 0;
    }
    let Some(command) = cli.command else {
        return io.fail(2, "missing subcommand");
    };
    match dispatch(command, &mut io) {
        Ok(code) => code,
        Err((code, msg)) => io.fail(code, msg),
    }
}

type Outcome = Result<i32, (i32, String)>;

fn usage<E: Display>(e: E) -> (i32, String) {
    (2, e.to_string())
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Validate { file } => {
            let text = io.read(&file).map_err(usage)?;
            let g = crate::topo::parse_topology(&text).map_err(|e| usage(format!("{file}: {e}")))?;
            let report = validate(&g);
            if report.is_ok() {
                writeln!(io.stdout, "OK").map_err(usage)?;
                return Ok(0);
            }
            for v in &report.violations {
                writeln!(io.stdout, "{v}").map_err(usage)?;
            }
            Ok(1)
        }
        Command::Test { file } => {
            let g = io.graph(&file).map_err(usage)?;
            let (line, code) = test_line(&g);
            writeln!(io.stdout, "{line}").map_err(usage)?;
            Ok(code)
        }
        Command::Draw(a) => draw_cmd(a, io),
        Command::Split { file, dump } => {
            let g = io.graph(&file).map_err(usage)?;
            let dec = decompose(&g).map_err(|e| (1, e))?;
            if dump {
                let text = serde_json::to_string_pretty(&split_json(&dec)).map_err(usage)?;
                writeln!(io.stdout, "{text}").map_err(usage)?;
            } else {
                let names = |vs: &[usize]| vs.iter().map(|&v| dec.graph.name(v)).collect::<Vec<_>>().join(",");
                writeln!(io.stdout, "cycle {}", names(&dec.cycle)).map_err(usage)?;
                writeln!(io.stdout, "walk {}", names(&dec.walk)).map_err(usage)?;
                writeln!(io.stdout, "side graphs {}", dec.side_graphs.len()).map_err(usage)?;
            }
            Ok(0)
        }
        Command::Verify { graph, drawing } => {
            let g = io.graph(&graph).map_err(usage)?;
            let text = io.read(&drawing).map_err(usage)?;
            let d = Drawing::from_json(&text)
                .and_then(|d| d.aligned(&g))
                .map_err(|e| usage(format!("{drawing}: {e}")))?;
            let report = verify(&g, &d);
            writeln!(io.stdout, "{report}").map_err(usage)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Gen(a) => {
            let g = match (a.kind.gk, a.kind.random) {
                (Some(k), _) => gen_gk(k),
                (_, Some(n)) => gen_random(n, a.seed, a.consistent),
                _ => unreachable!("clap enforces one generator"),
            }
            .map_err(usage)?;
            io.write(&a.output, &g.to_json()).map_err(usage)?;
            Ok(0)
        }
        Command::BenchArea { kmax } => bench_area(kmax, io),
        Command::BenchTime { sizes, repeat } => bench_time(&sizes, repeat.max(1), io),
    }
}

/// `DRAWABLE`, `NOT-DRAWABLE <witness>` or `UNKNOWN`, with the exit code.
pub fn test_line(g: &TopoGraph) -> (String, i32) {
    if matches!(g.surface(), Surface::Sphere) {
        let r = test_s2(g);
        return match r.witness {
            None => ("DRAWABLE".into(), 0),
            Some(v) => (format!("NOT-DRAWABLE {}", g.name(v)), 1),
        };
    }
    let r = test_r2(g);
    match (r.verdict, r.witness) {
        (Verdict::Drawable, _) => ("DRAWABLE".into(), 0),
        (Verdict::Unknown, _) => ("UNKNOWN".into(), 2),
        (Verdict::NotDrawable, Some(Witness::Vertex(v))) => (format!("NOT-DRAWABLE {}", g.name(v)), 1),
        (Verdict::NotDrawable, Some(Witness::Face(f))) => {
            let names: Vec<&str> = f.iter().map(|&v| g.name(v)).collect();
            (format!("NOT-DRAWABLE face:{}", names.join(",")), 1)
        }
        (Verdict::NotDrawable, None) => ("NOT-DRAWABLE".into(), 1),
    }
}

fn draw_cmd(a: DrawArgs, io: &mut Io) -> Outcome {
    let g = io.graph(&a.file).map_err(usage)?;
    let (ext, d) = draw_augmented(&g).map_err(|e| match e {
        LayoutError::Inconsistent(v) => (1, format!("NOT-DRAWABLE {v}")),
        e @ LayoutError::ExternalFace => (1, e.to_string()),
        e => (2, e.to_string()),
    })?;
    let shown = if a.keep_augmentation { ext } else { g };
    let d = Drawing::new(&shown, d.coords);
    io.write(&a.output, &d.to_svg(&shown)).map_err(usage)?;
    if let Some(path) = &a.json {
        io.write(path, &d.to_json()).map_err(usage)?;
    }
    Ok(0)
}

/// The decomposition of `g`: a maximal graph with an external face is split
/// as given, anything else is augmented and given an external face first.
pub fn decompose(g: &TopoGraph) -> Result<SplitDecomposition, String> {
    let ready = matches!(g.surface(), Surface::Plane(_)) && check_maximal(g).maximal;
    let ext = if ready {
        g.clone()
    } else {
        let aug = augment(g).map_err(|e| e.to_string())?;
        if aug.p() == 0 {
            return Err("no crossings, nothing to split".into());
        }
        choose_external(&aug, &build_lr(&aug)).map_err(|e| e.to_string())?
    };
    split(&ext).map_err(|e| e.to_string())
}

/// Decomposition as JSON, with vertex names.
pub fn split_json(dec: &SplitDecomposition) -> Value {
    let g = &dec.graph;
    let name = |v: usize| Value::from(g.name(v));
    let names = |vs: &[usize]| Value::from(vs.iter().map(|&v| name(v)).collect::<Vec<_>>());
    let edges = |es: &[(usize, usize)]| Value::from(es.iter().map(|&(a, b)| json!([name(a), name(b)])).collect::<Vec<_>>());
    let external = match g.surface() {
        Surface::Plane(f) => json!(f),
        Surface::Sphere => Value::Null,
    };
    let sides: Vec<Value> = dec
        .side_graphs
        .iter()
        .map(|sg| {
            let t = &sg.tree;
            let blocks: Vec<Value> = (0..t.blocks.len())
                .map(|b| {
                    json!({
                        "vertices": names(&t.blocks[b]),
                        "edges": edges(&t.block_edges[b]),
                        "parent_cut": t.parent_cut[b].map(name),
                        "parent_block": t.parent_block[b],
                    })
                })
                .collect();
            json!({
                "label": sg.label,
                "edge": [name(sg.edge.0), name(sg.edge.1)],
                "vertices": names(&sg.vertices),
                "edges": edges(&sg.edges),
                "cap": sg.is_cap,
                "tree": { "root": t.root, "blocks": blocks },
            })
        })
        .collect();
    let pockets: Vec<Value> = dec
        .pockets
        .iter()
        .map(|p| {
            json!({
                "boundary": names(&p.boundary),
                "apex": p.apex.map(name),
                "dummy_edges": edges(&p.dummy_edges),
                "removed": names(&p.removed),
            })
        })
        .collect();
    let order = safe_block_order(dec).ok().map(|o| o.into_iter().map(|(i, b)| json!([i, b])).collect::<Vec<_>>());
    json!({
        "schema_version": SCHEMA_VERSION,
        "external_face": external,
        "cycle": names(&dec.cycle),
        "walk": names(&dec.walk),
        "outer_vertices": names(&dec.outer_vertices),
        "outer_edges": edges(&dec.outer_edges),
        "inner_edges": edges(&dec.inner_edges),
        "dummy_edges": edges(&dec.dummy_edges),
        "pockets": pockets,
        "side_graphs": sides,
        "safe_block_order": order,
    })
}

fn bench_area(kmax: usize, io: &mut Io) -> Outcome {
    writeln!(io.stdout, "k,vertices,log2_area,log2_ratio,verified").map_err(usage)?;
    let mut prev: Option<f64> = None;
    for k in 1..=kmax {
        let g = gen_gk(k).map_err(usage)?;
        let (_, d) = draw_augmented(&g).map_err(|e| (2, format!("G_{k}: {e}")))?;
        let d = Drawing::new(&g, d.coords);
        let ok = verify(&g, &d).ok();
        let a = area_metrics(&g, &d).log2_area();
        let ratio = prev.map(|p| format!("{:.3}", a - p)).unwrap_or_default();
        writeln!(io.stdout, "{k},{},{a:.3},{ratio},{ok}", g.n()).map_err(usage)?;
        prev = Some(a);
    }
    Ok(0)
}

fn bench_time(sizes: &[usize], repeat: usize, io: &mut Io) -> Outcome {
    writeln!(io.stdout, "k,vertices,edges,seconds,ratio").map_err(usage)?;
    let mut prev: Option<f64> = None;
    for &n in sizes {
        let k = (n / 2).max(1);
        let g = gen_gk(k).map_err(usage)?;
        let secs = time_s2(&g, repeat);
        let ratio = prev.map(|p| format!("{:.3}", secs / p)).unwrap_or_default();
        writeln!(io.stdout, "{k},{},{},{secs:.6},{ratio}", g.n(), g.edge_count()).map_err(usage)?;
        prev = Some(secs);
    }
    Ok(0)
}

/// Seconds per run of the sphere test: best of `repeat` batches, each
/// lasting at least 20 ms.
pub fn time_s2(g: &TopoGraph, repeat: usize) -> f64 {
    (0..repeat)
        .map(|_| {
            let t = Instant::now();
            let mut runs = 0u32;
            while runs == 0 || t.elapsed().as_millis() < 20 {
                std::hint::black_box(test_s2(std::hint::black_box(g)));
                runs += 1;
            }
            t.elapsed().as_secs_f64() / f64::from(runs)
        })
        .fold(f64::INFINITY, f64::min)
}
