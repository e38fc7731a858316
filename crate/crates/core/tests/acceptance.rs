//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use digipi::cli_io::{enumerate_loops, run, serialize_image};
use digipi::clique_complex::{max_clique_size, two_skeleton, SimpleGraph};
use digipi::constructions::{
    circle, diamond, digital_interval, double_diamond, double_diamond_parts, embed_graph,
    projective_plane, realize_presentation,
};
use digipi::edge_group::EdgeGroupData;
use digipi::group_algebra::{
    abelianization, disconnected_complements, glue_images, tietze_simplify, todd_coxeter,
    words_equal, CosetResult, Presentation, Word, DEFAULT_TIETZE_PASSES,
};
use digipi::homotopy_oracle::{
    loops_homotopic_fixed_length, HomotopyClassifier, HomotopySearchConfig,
};
use digipi::image_core::{is_contractible_path, shorten_path, DigitalImage, DigitalPath, Point};
use digipi::two_dim::free_rank;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn simplified(x: &DigitalImage) -> std::result::Result<(EdgeGroupData, Presentation), String> {
    let data = EdgeGroupData::of_image(x).map_err(err)?;
    let s = tietze_simplify(data.presentation(), DEFAULT_TIETZE_PASSES);
    Ok((data, s))
}

fn circle_law() -> Outcome {
    for n in 4..=20 {
        let x = circle(n).map_err(err)?;
        let (_, s) = simplified(&x)?;
        let h1 = abelianization(&s).to_string();
        ensure(
            s.generator_count() == 1 && s.relator_count() == 0 && h1 == "Z^1",
            || format!("circle {n}: {s}, H1 = {h1}"),
        )?;
    }
    Ok("N = 4..20: <g1 | >, H1 = Z^1".into())
}

fn wedge_law() -> Outcome {
    let (_, s) = simplified(&double_diamond())?;
    let h1 = abelianization(&s).to_string();
    ensure(
        s.generator_count() == 2 && s.relator_count() == 0 && h1 == "Z^2",
        || format!("{s}, H1 = {h1}"),
    )?;
    Ok(format!("{s}, H1 = {h1}"))
}

fn projective_plane_law() -> Outcome {
    let x = projective_plane();
    let k = two_skeleton(&x);
    let fv = k.f_vector();
    let clique = max_clique_size(k.graph());
    let (_, s) = simplified(&x)?;
    let h1 = abelianization(&s).to_string();
    let order = todd_coxeter(&s, 1000);
    ensure(
        fv == (13, 36, 24) && clique == 3 && h1 == "Z/2" && order == CosetResult::Finite(2),
        || format!("f = {fv:?}, clique {clique}, H1 = {h1}, order {order:?}"),
    )?;
    Ok(format!(
        "f = {fv:?}, max clique {clique}, H1 = {h1}, order 2"
    ))
}

fn realization_pipeline() -> Outcome {
    let p = Presentation::new(2, vec![Word::parse("g1 g2 g1^-1").map_err(err)?]).map_err(err)?;
    let r = realize_presentation(&p).map_err(err)?;
    let x = r.image();
    let k = two_skeleton(x);
    let (_, s) = simplified(x)?;
    let h1 = abelianization(&s).to_string();
    ensure(
        x.len() == 20
            && max_clique_size(k.graph()) <= 3
            && r.triangles_match_design()
            && s.generator_count() == 1
            && s.relator_count() == 0
            && h1 == "Z^1",
        || format!("{} points, {s}, H1 = {h1}", x.len()),
    )?;

    let q = Presentation::new(1, vec![Word::parse("g1 g1").map_err(err)?]).map_err(err)?;
    let rq = realize_presentation(&q).map_err(err)?;
    let (_, sq) = simplified(rq.image())?;
    let hq = abelianization(&sq).to_string();
    let order = todd_coxeter(&sq, 1000);
    ensure(hq == "Z/2" && order == CosetResult::Finite(2), || {
        format!("<g | g^2>: H1 = {hq}, order {order:?}")
    })?;
    Ok(format!(
        "20 points, {} triangles as designed, {s}; <g | g^2> gives Z/2 of order 2",
        r.complex.triangles.len()
    ))
}

fn random_connected_graph(rng: &mut ChaCha8Rng) -> SimpleGraph {
    let n = rng.gen_range(1..=10);
    let mut g = SimpleGraph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v);
    }
    let p: f64 = rng.gen_range(0.0..0.6);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn graph_embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..200 {
        let g = random_connected_graph(&mut rng);
        let e = embed_graph(&g).map_err(err)?;
        let n = g.vertex_count();
        ensure(e.image.len() == n, || format!("trial {trial}: size"))?;
        for u in 0..n {
            ensure(e.vertex_of[e.point_of[u]] == u, || {
                format!("trial {trial}: correspondence not inverse")
            })?;
            for v in 0..n {
                let adj = e.image.adjacent_indices(e.point_of[u], e.point_of[v]);
                ensure(adj == g.has_edge(u, v), || {
                    format!("trial {trial}: edge {u} {v} differs")
                })?;
            }
        }
        ensure(
            e.image
                .points()
                .iter()
                .all(|p| p.coords().iter().all(|c| (-1..=1).contains(c))),
            || format!("trial {trial}: coordinate outside [-1,1]"),
        )?;
    }
    Ok("200 graphs isomorphic, coordinates in {-1,0,1}".into())
}

/// A connected image grown from a random seed point inside `[0,side]^2`.
fn random_planar_image(rng: &mut ChaCha8Rng, max_points: usize, side: i64) -> DigitalImage {
    let target = rng.gen_range(1..=max_points);
    let start = Point::new(vec![rng.gen_range(0..=side), rng.gen_range(0..=side)]);
    let mut set: BTreeSet<Point> = BTreeSet::from([start.clone()]);
    let mut frontier: Vec<Point> = Vec::new();
    let push_neighbours = |p: &Point, frontier: &mut Vec<Point>, set: &BTreeSet<Point>| {
        for dx in -1..=1 {
            for dy in -1..=1 {
                let q = Point::new(vec![p.coords()[0] + dx, p.coords()[1] + dy]);
                let inside = q.coords().iter().all(|c| (0..=side).contains(c));
                if inside && !set.contains(&q) {
                    frontier.push(q);
                }
            }
        }
    };
    push_neighbours(&start, &mut frontier, &set);
    while set.len() < target && !frontier.is_empty() {
        let q = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if set.insert(q.clone()) {
            push_neighbours(&q, &mut frontier, &set);
        }
    }
    DigitalImage::from_points(set.into_iter().collect(), &start).expect("valid points")
}

fn planar_freeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut max_rank = 0;
    for trial in 0..500 {
        let x = random_planar_image(&mut rng, 25, 6);
        let rank = free_rank(&x).map_err(err)?;
        let data = EdgeGroupData::of_image(&x).map_err(err)?;
        let h1 = abelianization(data.presentation());
        ensure(h1.rank == rank && h1.torsion.is_empty(), || {
            format!(
                "trial {trial}: free_rank {rank}, H1 = {h1}\n{}",
                serialize_image(&x)
            )
        })?;
        max_rank = max_rank.max(rank);
    }
    Ok(format!(
        "500 images agree, torsion-free, ranks up to {max_rank}"
    ))
}

fn svk_shadow() -> Outcome {
    let (u, v) = double_diamond_parts();
    let g = glue_images(&u, &v).map_err(err)?;
    let hp = abelianization(&g.pushout);
    let hw = abelianization(&g.union);
    ensure(hp == hw && hp.to_string() == "Z^2", || {
        format!("pushout H1 = {hp}, union H1 = {hw}")
    })?;

    let pts = |ps: &[[i64; 2]]| ps.iter().map(|&p| Point::from(p)).collect::<Vec<_>>();
    let cu = DigitalImage::new(2, pts(&[[1, 0], [0, 1]]), 0).map_err(err)?;
    let cv = DigitalImage::new(2, pts(&[[1, 0], [0, -1], [-1, 0]]), 0).map_err(err)?;
    ensure(!disconnected_complements(&cu, &cv).map_err(err)?, || {
        "counterexample passes the hypothesis check".into()
    })?;
    let dir = std::env::temp_dir().join(format!("digipi-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let (fu, fv) = (dir.join("u.dimg"), dir.join("v.dimg"));
    std::fs::write(&fu, serialize_image(&cu)).map_err(err)?;
    std::fs::write(&fv, serialize_image(&cv)).map_err(err)?;
    let (code, msg) = run([
        "digipi",
        "svk",
        fu.to_str().unwrap_or_default(),
        fv.to_str().unwrap_or_default(),
    ]);
    ensure(code == 1, || format!("CLI exit {code}: {msg}"))?;
    Ok(format!(
        "pushout H1 = {hp} = union H1; counterexample refused with exit 1"
    ))
}

fn phi_soundness() -> Outcome {
    let square = DigitalImage::new(
        2,
        vec![
            Point::from([0, 0]),
            Point::from([1, 0]),
            Point::from([0, 1]),
            Point::from([1, 1]),
        ],
        0,
    )
    .map_err(err)?;
    let mut summary = Vec::new();
    for (name, x) in [("diamond", diamond()), ("square", square)] {
        let data = EdgeGroupData::of_image(&x).map_err(err)?;
        let loops = enumerate_loops(&x, 5, usize::MAX);
        let paths: Vec<DigitalPath<'_>> = loops
            .iter()
            .map(|l| DigitalPath::from_indices(&x, l.clone()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let words: Vec<Word> = paths
            .iter()
            .map(|p| data.phi(p))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let mut classifier = HomotopyClassifier::new(&x, HomotopySearchConfig::default());
        let (mut pairs, mut certified) = (0usize, 0usize);
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                pairs += 1;
                if classifier
                    .subdivision_homotopic(&paths[i], &paths[j])
                    .is_homotopic()
                {
                    certified += 1;
                    let equal = words_equal(data.presentation(), &words[i], &words[j], 1000);
                    ensure(equal == Some(true), || {
                        format!(
                            "{name}: {:?} ~ {:?} but words {equal:?}",
                            loops[i], loops[j]
                        )
                    })?;
                }
            }
        }
        summary.push(format!(
            "{name} {} loops, {certified}/{pairs} pairs certified",
            loops.len()
        ));
    }

    let d = diamond();
    let b = d.basepoint_index();
    let around = d.neighbors(b);
    let opposite = (0..d.len())
        .find(|&i| i != b && !d.near(i, b))
        .ok_or("diamond has no opposite point")?;
    let traversal =
        DigitalPath::from_indices(&d, vec![b, around[0], opposite, around[1], b]).map_err(err)?;
    let constant = DigitalPath::constant(&d, 4);
    let homotopic =
        loops_homotopic_fixed_length(&d, &traversal, &constant, 1_000_000).map_err(err)?;
    let w = digipi::edge_group::phi(&d, &traversal).map_err(err)?;
    ensure(!homotopic && !w.is_empty(), || {
        format!("traversal homotopic = {homotopic}, phi = {w}")
    })?;
    summary.push(format!("traversal not homotopic to C_4, phi = {w}"));
    Ok(summary.join("; "))
}

fn random_walk(rng: &mut ChaCha8Rng, x: &DigitalImage, steps: usize) -> Vec<usize> {
    let table = x.neighbor_table();
    let mut walk = vec![rng.gen_range(0..x.len())];
    for _ in 0..steps {
        let cur = *walk.last().expect("nonempty");
        let mut opts = table[cur].clone();
        opts.push(cur);
        walk.push(opts[rng.gen_range(0..opts.len())]);
    }
    walk
}

fn shortening() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = 0;
    let mut attempts = 0;
    while done < 200 {
        attempts += 1;
        ensure(attempts < 100_000, || "could not draw enough paths".into())?;
        let x = random_planar_image(&mut rng, 20, 5);
        if x.len() < 3 {
            continue;
        }
        let len = rng.gen_range(2..40);
        let walk = random_walk(&mut rng, &x, len);
        if x.near(walk[0], *walk.last().expect("nonempty")) {
            continue;
        }
        let path = DigitalPath::from_indices(&x, walk.clone()).map_err(err)?;
        let c = shorten_path(&path).map_err(err)?;
        let ok = is_contractible_path(&c.points(), &x).map_err(err)?;
        let used: BTreeSet<usize> = walk.iter().copied().collect();
        let members = c.members();
        ensure(
            ok && members.iter().all(|m| used.contains(m))
                && members.first() == walk.first()
                && members.last() == walk.last(),
            || format!("path {walk:?} shortened to {members:?}"),
        )?;
        done += 1;
    }
    Ok(format!("200 paths shortened ({attempts} draws)"))
}

/// All paths of length at most `max_len` in `x`.
fn all_paths(x: &DigitalImage, max_len: usize) -> Vec<Vec<usize>> {
    let table = x.neighbor_table();
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..x.len()).map(|i| vec![i]).collect();
    for _ in 0..=max_len {
        out.extend(level.iter().cloned());
        let mut next = Vec::new();
        for p in &level {
            let last = *p.last().expect("nonempty");
            let mut opts = table[last].clone();
            opts.push(last);
            for v in opts {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        level = next;
    }
    out
}

fn calculus_identities() -> Outcome {
    let x = digital_interval(2);
    let raw = all_paths(&x, 6);
    let paths: Vec<DigitalPath<'_>> = raw
        .iter()
        .map(|s| DigitalPath::from_indices(&x, s.clone()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut checks = 0usize;
    for a in &paths {
        ensure(a.reverse().reverse() == *a, || {
            format!("reverse {:?}", a.steps())
        })?;
        for k in 1..=4 {
            let rho = a.standard_projection_compose(k).map_err(err)?;
            let ext = a
                .trivial_extension(&vec![k - 1; a.steps().len()])
                .map_err(err)?;
            ensure(
                rho == ext && rho.length() == k * (a.length() + 1) - 1,
                || format!("rho_{k} {:?}", a.steps()),
            )?;
            checks += 1;
        }
        for b in &paths {
            if let Ok(ab) = a.concatenate(b) {
                checks += 1;
                ensure(ab.length() == a.length() + b.length() + 1, || {
                    format!("length law {:?} {:?}", a.steps(), b.steps())
                })?;
                ensure(
                    ab.reverse() == b.reverse().concatenate(&a.reverse()).map_err(err)?,
                    || format!("reverse of product {:?} {:?}", a.steps(), b.steps()),
                )?;
            }
        }
    }
    // associativity: all triples of paths up to length 3, and one path per
    // (length, endpoints) class up to length 6
    let short: Vec<&DigitalPath<'_>> = paths.iter().filter(|p| p.length() <= 3).collect();
    let mut reps: Vec<&DigitalPath<'_>> = Vec::new();
    let mut seen = BTreeSet::new();
    for p in &paths {
        if seen.insert((p.length(), p.first(), p.last())) {
            reps.push(p);
        }
    }
    for family in [&short, &reps] {
        for a in family.iter() {
            for b in family.iter() {
                let Ok(ab) = a.concatenate(b) else { continue };
                for c in family.iter() {
                    let Ok(left) = ab.concatenate(c) else {
                        continue;
                    };
                    let right = a
                        .concatenate(&b.concatenate(c).map_err(err)?)
                        .map_err(err)?;
                    ensure(left == right, || {
                        format!(
                            "associativity {:?} {:?} {:?}",
                            a.steps(),
                            b.steps(),
                            c.steps()
                        )
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{} paths, {checks} identities", paths.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 circle law", circle_law, Duration::from_secs(1)),
        ("2 wedge law", wedge_law, Duration::from_secs(1)),
        (
            "3 projective plane",
            projective_plane_law,
            Duration::from_secs(5),
        ),
        (
            "4 realization pipeline",
            realization_pipeline,
            Duration::from_secs(10),
        ),
        (
            "5 graph embedding",
            graph_embedding,
            Duration::from_secs(10),
        ),
        (
            "6 planar freeness",
            planar_freeness,
            Duration::from_secs(60),
        ),
        ("7 van Kampen shadow", svk_shadow, Duration::from_secs(1)),
        ("8 phi soundness", phi_soundness, Duration::from_secs(120)),
        ("9 shortening", shortening, Duration::from_secs(5)),
        (
            "10 calculus identities",
            calculus_identities,
            Duration::from_secs(5),
        ),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget {budget:?}: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} {name} ({:.2}s): {detail}", elapsed.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
