mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use almostline::analysis::{classify, test_r2, test_s2, Verdict};
use almostline::cli::{decompose, run, time_s2};
use almostline::gen::{gen_gk, gen_random};
use almostline::geom::{Point, Q};
use almostline::layout::draw;
use almostline::transform::{augment, build_lr, check_maximal, choose_external, inconsistent_faces, safe_block_order, split};
use almostline::{area_metrics, verify, Drawing, TopoGraph};
use common::{fixture, fixture_path, grid_drawing, names, oracle_ok, suite_instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn cli_stdout(args: &[&str]) -> (String, i32) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("almostline").chain(args.iter().copied());
    let code = run(argv, &mut std::io::empty(), &mut out, &mut err);
    (String::from_utf8(out).unwrap().trim().to_string(), code)
}

fn crit1() -> Check {
    let a = fixture_path("fig1a.json");
    let c = fixture_path("fig1c.json");
    let ra = cli_stdout(&["test", a.to_str().unwrap()]);
    let rc = cli_stdout(&["test", c.to_str().unwrap()]);
    if ra != ("DRAWABLE".into(), 0) {
        return Err(format!("fig1a gave {ra:?}"));
    }
    if rc != ("NOT-DRAWABLE v".into(), 1) {
        return Err(format!("fig1c gave {rc:?}"));
    }
    Ok("fig1a DRAWABLE, fig1c NOT-DRAWABLE v".into())
}

fn crit2() -> Check {
    let aug = augment(&fixture("fig1a.json")).map_err(|e| e.to_string())?;
    let verdict = |name: &str| test_r2(&aug.with_surface(fixture(name).surface().clone())).verdict;
    let a = verdict("fig1a_plane_a.json");
    let b = verdict("fig1a_plane_b.json");
    if a != Verdict::NotDrawable || b != Verdict::Drawable {
        return Err(format!("face (a) {a:?}, face (b) {b:?}"));
    }
    Ok("face (a) NOT-DRAWABLE, face (b) DRAWABLE".into())
}

fn crit3() -> Check {
    let start = Instant::now();
    let mut failed = Vec::new();
    for seed in 1..=200u64 {
        let g = suite_instance(seed);
        match draw(&g) {
            Ok(d) if verify(&g, &d).ok() => {}
            _ => failed.push(seed),
        }
    }
    let el = start.elapsed();
    if !failed.is_empty() {
        return Err(format!("seeds failing: {failed:?}"));
    }
    if el > Duration::from_secs(60) {
        return Err(format!("took {el:.1?}"));
    }
    Ok(format!("200/200 verified in {el:.1?}"))
}

fn structural(g: &TopoGraph) -> Result<(), String> {
    let aug = augment(g).map_err(|e| e.to_string())?;
    if !classify(&aug).is_vertex_consistent() || !test_s2(&aug).drawable {
        return Err("augmentation lost consistency".into());
    }
    let (n, m) = (aug.n(), aug.edge_count());
    let f4 = check_maximal(&aug).f4;
    if m + 6 == 3 * n {
        let f = f4.ok_or("3n-6 edges without a quadrangle")?;
        let adj = |a: usize, b: usize| aug.rotation(a).contains(&b);
        let clique = f.iter().all(|&a| f.iter().all(|&b| a == b || adj(a, b)));
        if f.len() != 4 || !f.contains(&aug.s()) || !f.contains(&aug.t()) || !clique {
            return Err(format!("bad quadrangle {:?}", names(&aug, &f)));
        }
    } else if m + 5 != 3 * n {
        return Err(format!("{m} edges on {n} vertices"));
    }
    if aug.p() == 0 {
        return Ok(());
    }
    let lr = build_lr(&aug);
    let report = inconsistent_faces(&aug, &lr).map_err(|e| e.to_string())?;
    let bad = report.faces.iter().filter(|f| !f.consistent).count();
    if bad != 1 {
        return Err(format!("{bad} inconsistent faces"));
    }
    let ext = choose_external(&aug, &lr).map_err(|e| e.to_string())?;
    let dec = split(&ext).map_err(|e| e.to_string())?;
    let distinct: BTreeSet<usize> = dec.cycle.iter().copied().collect();
    if distinct.len() != dec.cycle.len() || dec.cycle.len() < 3 {
        return Err("separating cycle not simple".into());
    }
    safe_block_order(&dec).map_err(|e| format!("safe-block loop: {e}"))?;
    Ok(())
}

fn crit4() -> Check {
    let mut count = 0;
    for seed in 1..=200u64 {
        structural(&suite_instance(seed)).map_err(|e| format!("seed {seed}: {e}"))?;
        count += 1;
    }
    for k in 2..=8 {
        structural(&gen_gk(k).unwrap()).map_err(|e| format!("G_{k}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn crit5() -> Check {
    let dec = decompose(&fixture("fig9.json"))?;
    let w = names(&dec.graph, &dec.walk).join(",");
    if w != "s,e,d,c,b,a,t,g,h,i,h,j,k" {
        return Err(format!("walk {w}"));
    }
    let dec = decompose(&fixture("fig10.json"))?;
    let g = &dec.graph;
    let caps: BTreeSet<(String, String)> = dec
        .side_graphs
        .iter()
        .filter(|sg| sg.is_cap)
        .map(|sg| {
            let mut e = [g.name(sg.edge.0).to_string(), g.name(sg.edge.1).to_string()];
            e.sort();
            (e[0].clone(), e[1].clone())
        })
        .collect();
    let want: BTreeSet<(String, String)> = [("d", "m"), ("b", "h")].iter().map(|&(a, b)| (a.into(), b.into())).collect();
    if dec.side_graphs.len() != 8 || caps != want {
        return Err(format!("{} side graphs, caps {caps:?}", dec.side_graphs.len()));
    }
    Ok(format!("walk {w}; 8 side graphs, caps on dm and hb"))
}

fn crit6() -> Check {
    let start = Instant::now();
    let mut areas: Vec<Q> = Vec::new();
    for k in 1..=8 {
        let g = gen_gk(k).unwrap();
        let d = draw(&g).map_err(|e| format!("G_{k}: {e}"))?;
        if !verify(&g, &d).ok() {
            return Err(format!("G_{k} drawing invalid"));
        }
        areas.push(area_metrics(&g, &d).normalized_area);
    }
    for k in 1..8 {
        if areas[k] <= areas[k - 1] {
            return Err(format!("area does not grow from G_{k}"));
        }
    }
    let two = Q::from_integer(2.into());
    for k in 3..8 {
        if areas[k] < &areas[k - 1] * &two {
            return Err(format!("ratio below 2 from G_{k} to G_{}", k + 1));
        }
    }
    let el = start.elapsed();
    if el > Duration::from_secs(300) {
        return Err(format!("took {el:.1?}"));
    }
    Ok(format!("increasing, ratios >= 2 for k=3..7, {el:.1?}"))
}

fn crit7() -> Check {
    let times: Vec<f64> = [500usize, 5000, 50000].iter().map(|&k| time_s2(&gen_gk(k).unwrap(), 5)).collect();
    let per_doubling: Vec<f64> = times.windows(2).map(|w| (w[1] / w[0]).powf(1.0 / 10f64.log2())).collect();
    let text = format!("times {:?} s, per doubling {per_doubling:.2?}", times.iter().map(|t| format!("{t:.2e}")).collect::<Vec<_>>());
    if per_doubling.iter().all(|&r| r <= 2.5) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn small_instances() -> Vec<TopoGraph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 100 {
        seed += 1;
        if let Ok(g) = gen_random(4 + (seed as usize % 3), seed, !seed.is_multiple_of(4)) {
            if g.edge_count() <= 10 {
                out.push(g);
            }
        }
    }
    out
}

fn crit8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut valid, mut total) = (0, 0);
    for (i, g) in small_instances().into_iter().enumerate() {
        let drawn = if i % 2 == 0 { draw(&g).ok() } else { None };
        let d = drawn.unwrap_or_else(|| {
            let xy: Vec<(i64, i64)> = (0..g.n()).map(|_| (rng.gen_range(0..6), rng.gen_range(0..6))).collect();
            grid_drawing(&g, &xy)
        });
        let (v, o) = (verify(&g, &d).ok(), oracle_ok(&g, &d));
        if v != o {
            return Err(format!("disagreement on instance {i}: verifier {v}, oracle {o}"));
        }
        valid += usize::from(o);
        total += 1;
    }
    let g = fixture("fig1a.json");
    let d = draw(&g).map_err(|e| e.to_string())?;
    if !verify(&g, &d).ok() || !oracle_ok(&g, &d) {
        return Err("fig1a drawing rejected".into());
    }
    let v = (0..g.n()).find(|&v| g.rotation(v).len() >= 3).unwrap();
    let mut rot = g.rotation(v).to_vec();
    rot.swap(0, 1);
    let mut rots = g.rotations().to_vec();
    rots[v] = rot;
    let swapped = TopoGraph::new(g.names().to_vec(), rots, g.s(), g.t(), g.crossings().to_vec(), g.surface().clone());
    let c = g.crossings()[0].left;
    let (s, t) = (&d.coords[g.s()], &d.coords[g.t()]);
    let mut coords = d.coords.clone();
    coords[c] = reflect(&coords[c], s, t);
    let moved = Drawing::new(&g, coords);
    for (what, gg, dd) in [("rotation swap", &swapped, &d), ("perturbation", &g, &moved)] {
        if verify(gg, dd).ok() || oracle_ok(gg, dd) {
            return Err(format!("{what} not detected"));
        }
    }
    Ok(format!("{total} drawings agree ({valid} valid); both mutations flip"))
}

fn reflect(p: &Point, a: &Point, b: &Point) -> Point {
    let d = b.sub(a);
    let v = p.sub(a);
    let k = (&v.x * &d.x + &v.y * &d.y) / (&d.x * &d.x + &d.y * &d.y);
    let foot = a.add(&d.scale(&k));
    Point::new(&foot.x * Q::from_integer(2.into()) - &p.x, &foot.y * Q::from_integer(2.into()) - &p.y)
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 8] = [
        ("fig1a/fig1c sphere test", crit1),
        ("fig1a external faces", crit2),
        ("random draw+verify", crit3),
        ("augmentation structure", crit4),
        ("fig9 walk, fig10 side graphs", crit5),
        ("G_k area growth", crit6),
        ("sphere test scaling", crit7),
        ("verifier vs oracle", crit8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {} {name}: {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
