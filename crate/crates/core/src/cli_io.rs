//! Text formats, reports and the command-line driver.
//!
//! * `.dimg`: dimension, then the 0-based basepoint index, then one point
//!   per line; `#` starts a comment.
//! * `.pres`: `gens k`, then one relator per line (`1` for the empty word).
//! * graph files: `vertices n`, then one `u v` edge per line, 0-based.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clique_complex::{export_dot, max_clique_size, two_skeleton, SimpleGraph};
use crate::constructions::{
    circle, diamond, digital_interval, double_diamond, embed_graph, projective_plane,
    realize_presentation,
};
use crate::edge_group::{EdgeGroupData, EdgeLoop};
use crate::error::{Error, Result};
use crate::group_algebra::{
    abelianization, cyclic_normal_form, glue_images, tietze_simplify, todd_coxeter, words_equal,
    CosetResult, Presentation, Word, DEFAULT_TIETZE_PASSES,
};
use crate::homotopy_oracle::{HomotopyClassifier, HomotopySearchConfig};
use crate::image_core::{DigitalImage, DigitalPath, Point};
use crate::two_dim::free_rank_explained;

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{token}`")))
}

pub fn parse_image(text: &str) -> Result<DigitalImage> {
    let mut lines = content_lines(text);
    let (l1, dim_text) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing dimension"))?;
    let dimension: usize = parse_number(l1, dim_text, "a dimension")?;
    if dimension == 0 {
        return Err(parse_err(l1, "dimension must be positive"));
    }
    let (l2, base_text) = lines
        .next()
        .ok_or_else(|| parse_err(l1 + 1, "missing basepoint index"))?;
    let basepoint: usize = parse_number(l2, base_text, "a basepoint index")?;
    let mut points = Vec::new();
    let mut seen = BTreeSet::new();
    for (ln, body) in lines {
        let coords = body
            .split_whitespace()
            .map(|t| parse_number::<i64>(ln, t, "an integer coordinate"))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dimension {
            return Err(parse_err(
                ln,
                format!("expected {dimension} coordinates, found {}", coords.len()),
            ));
        }
        let p = Point::new(coords);
        if !seen.insert(p.clone()) {
            return Err(parse_err(ln, format!("duplicate point {p}")));
        }
        points.push(p);
    }
    if points.is_empty() {
        return Err(parse_err(l2, "image has no points"));
    }
    if basepoint >= points.len() {
        return Err(parse_err(
            l2,
            format!(
                "basepoint index {basepoint} out of range for {} points",
                points.len()
            ),
        ));
    }
    DigitalImage::new(dimension, points, basepoint)
}

/// Canonical form: points in lexicographic order, basepoint index into that
/// order.
pub fn serialize_image(x: &DigitalImage) -> String {
    let mut out = format!("{}\n{}\n", x.dimension(), x.basepoint_index());
    for p in x.points() {
        let coords: Vec<String> = p.coords().iter().map(i64::to_string).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut lines = content_lines(text);
    let (l1, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `gens k` line"))?;
    let k: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["gens", k] => parse_number(l1, k, "a generator count")?,
        _ => return Err(parse_err(l1, "expected `gens k`")),
    };
    let mut relators = Vec::new();
    for (ln, body) in lines {
        let w = Word::parse(body).map_err(|e| match e {
            Error::Parse { message, .. } => parse_err(ln, message),
            other => other,
        })?;
        if let Some(g) = w.max_generator() {
            if g >= k {
                return Err(parse_err(
                    ln,
                    format!("unknown generator g{} (gens {k})", g + 1),
                ));
            }
        }
        relators.push(w);
    }
    Presentation::new(k, relators)
}

pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = format!("gens {}\n", p.generator_count());
    for r in p.relators() {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut lines = content_lines(text);
    let (l1, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `vertices n` line"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["vertices", n] => parse_number(l1, n, "a vertex count")?,
        _ => return Err(parse_err(l1, "expected `vertices n`")),
    };
    let mut g = SimpleGraph::new(n);
    for (ln, body) in lines {
        let ends: Vec<&str> = body.split_whitespace().collect();
        let [u, v] = ends.as_slice() else {
            return Err(parse_err(ln, "expected an edge `u v`"));
        };
        let u: usize = parse_number(ln, u, "a vertex")?;
        let v: usize = parse_number(ln, v, "a vertex")?;
        if u == v || u >= n || v >= n || g.has_edge(u, v) {
            return Err(parse_err(ln, format!("invalid edge {u} {v}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

pub fn serialize_graph(g: &SimpleGraph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Key-value report lines.
#[derive(Default)]
struct Report(String);

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{key} = {value}");
    }
}

pub const DEFAULT_MAX_COSETS: usize = 1000;

/// f-vector, presentations, H₁ and a bounded order for a connected image.
pub fn analyze_report(x: &DigitalImage, max_cosets: usize) -> Result<String> {
    let k = two_skeleton(x);
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    let data = EdgeGroupData::new(k)?;
    let p = data.presentation();
    let (v, e, t) = data.complex().f_vector();
    let simplified = tietze_simplify(p, DEFAULT_TIETZE_PASSES);
    let h1 = abelianization(&simplified);
    let mut r = Report::default();
    r.kv("points", x.len());
    r.kv("dimension", x.dimension());
    r.kv("basepoint", x.basepoint());
    r.kv("f_vector", format!("{v} {e} {t}"));
    r.kv("max_clique", max_clique_size(data.complex().graph()));
    r.kv("generators", p.generator_count());
    r.kv("relators", p.relator_count());
    r.kv("simplified_generators", simplified.generator_count());
    r.kv("simplified_relators", simplified.relator_count());
    r.kv("simplified", &simplified);
    r.kv("H1", &h1);
    r.kv("order", order_text(&simplified, &h1, max_cosets));
    Ok(r.0)
}

fn order_text(
    p: &Presentation,
    h1: &crate::group_algebra::AbelianInvariants,
    max_cosets: usize,
) -> String {
    if h1.rank > 0 {
        return "infinite".into();
    }
    match todd_coxeter(p, max_cosets) {
        CosetResult::Finite(n) => n.to_string(),
        CosetResult::Exceeded => format!(">{max_cosets}"),
    }
}

/// Named-construction checks run by `construct --verify`.
pub fn verify_construction(name: &str, n: Option<usize>, x: &DigitalImage) -> Vec<(String, bool)> {
    let k = two_skeleton(x);
    let mut checks = vec![("connected".to_string(), k.is_connected())];
    let h1 = || {
        EdgeGroupData::new(k.clone())
            .map(|d| abelianization(d.presentation()).to_string())
            .unwrap_or_default()
    };
    match name {
        "diamond" | "circle" => {
            let len = n.unwrap_or(4);
            checks.push((format!("points == {len}"), x.len() == len));
            checks.push((
                "every point has two neighbours".into(),
                (0..x.len()).all(|i| x.neighbors(i).len() == 2),
            ));
            checks.push(("no triangles".into(), k.triangles().is_empty()));
            checks.push(("H1 == Z^1".into(), h1() == "Z^1"));
        }
        "double-diamond" => {
            checks.push(("f_vector == (7, 8, 0)".into(), k.f_vector() == (7, 8, 0)));
            checks.push(("H1 == Z^2".into(), h1() == "Z^2"));
        }
        "rp2" => {
            checks.push((
                "f_vector == (13, 36, 24)".into(),
                k.f_vector() == (13, 36, 24),
            ));
            checks.push(("max clique == 3".into(), max_clique_size(k.graph()) == 3));
            checks.push(("H1 == Z/2".into(), h1() == "Z/2"));
        }
        "interval" => {
            checks.push((
                format!("points == {}", n.unwrap_or(0) + 1),
                x.len() == n.unwrap_or(0) + 1,
            ));
            checks.push(("H1 == 0".into(), h1() == "0"));
        }
        _ => {}
    }
    checks
}

fn construct(name: &str, n: Option<usize>) -> Result<DigitalImage> {
    let need = || n.ok_or_else(|| Error::Precondition(format!("`{name}` needs a size parameter")));
    match name {
        "diamond" => Ok(diamond()),
        "circle" => circle(need()?),
        "double-diamond" => Ok(double_diamond()),
        "rp2" => Ok(projective_plane()),
        "interval" => Ok(digital_interval(need()?)),
        other => Err(Error::Usage(format!(
            "unknown construction `{other}` (diamond, circle N, double-diamond, rp2, interval N)"
        ))),
    }
}

/// Settings for the `verify` oracle suite.
#[derive(Clone, Copy, Debug)]
pub struct VerifySettings {
    pub max_length: usize,
    pub max_loops: usize,
    pub seed: u64,
    pub random_trials: usize,
    pub max_cosets: usize,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            max_length: 4,
            max_loops: 400,
            seed: 7,
            random_trials: 200,
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

/// Based loops of length at most `max_length`, in lexicographic order of
/// (length, steps), stopping after `cap` loops.
pub fn enumerate_loops(x: &DigitalImage, max_length: usize, cap: usize) -> Vec<Vec<usize>> {
    let table = x.neighbor_table();
    let b = x.basepoint_index();
    let mut out = Vec::new();
    for length in 0..=max_length {
        let mut level: Vec<Vec<usize>> = vec![vec![b]];
        for step in 0..length {
            let mut next = Vec::new();
            for seq in &level {
                let last = *seq.last().expect("nonempty");
                let mut opts = table[last].clone();
                opts.push(last);
                opts.sort_unstable();
                for v in opts {
                    // remaining steps must be able to return to b
                    let remaining = length - step - 1;
                    if remaining == 0 && v != b {
                        continue;
                    }
                    let mut s = seq.clone();
                    s.push(v);
                    next.push(s);
                }
            }
            level = next;
        }
        for l in level {
            if out.len() >= cap {
                return out;
            }
            out.push(l);
        }
    }
    out
}

/// Cross-checks the group-theoretic reading of loops against the bounded
/// homotopy oracle. Returns report text and the number of violations.
pub fn verify_report(x: &DigitalImage, settings: VerifySettings) -> Result<(String, usize)> {
    let data = EdgeGroupData::of_image(x)?;
    let loops = enumerate_loops(x, settings.max_length, settings.max_loops);
    let paths: Vec<DigitalPath<'_>> = loops
        .iter()
        .map(|l| DigitalPath::from_indices(x, l.clone()))
        .collect::<Result<_>>()?;
    let words: Vec<Word> = paths.iter().map(|p| data.phi(p)).collect::<Result<_>>()?;
    let mut violations = 0;

    let mut classifier = HomotopyClassifier::new(x, HomotopySearchConfig::default());
    let mut certified = 0usize;
    let mut undecided = 0usize;
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if classifier
                .subdivision_homotopic(&paths[i], &paths[j])
                .is_homotopic()
            {
                certified += 1;
                match words_equal(
                    data.presentation(),
                    &words[i],
                    &words[j],
                    settings.max_cosets,
                ) {
                    Some(true) => {}
                    Some(false) => violations += 1,
                    None => undecided += 1,
                }
            }
        }
    }

    let relator_forms: BTreeSet<Word> = data
        .presentation()
        .relators()
        .iter()
        .map(cyclic_normal_form)
        .collect();
    let mut moves_checked = 0usize;
    for (l, w) in loops.iter().zip(&words) {
        let el = EdgeLoop::new(data.complex(), l.clone())?;
        for i in 1..l.len().saturating_sub(1) {
            let mv = crate::edge_group::MoveSpec::DeleteVertex { index: i };
            if let Ok(m) = crate::edge_group::apply_edge_move(data.complex(), &el, mv) {
                moves_checked += 1;
                let diff = cyclic_normal_form(&data.word_of(&m)?.concat(&w.inverse()));
                if !diff.is_empty() && !relator_forms.contains(&diff) {
                    violations += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let table = x.neighbor_table();
    let random_loop = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let mut steps = vec![x.basepoint_index()];
        for _ in 0..rng.gen_range(0..10) {
            let cur = *steps.last().expect("nonempty");
            let mut opts = table[cur].clone();
            opts.push(cur);
            steps.push(opts[rng.gen_range(0..opts.len())]);
        }
        let mut back = data.tree().path_from_root(*steps.last().expect("nonempty"));
        back.reverse();
        steps.extend_from_slice(&back[1..]);
        steps
    };
    for _ in 0..settings.random_trials {
        let a = DigitalPath::from_indices(x, random_loop(&mut rng))?;
        let b = DigitalPath::from_indices(x, random_loop(&mut rng))?;
        let (pa, pb) = (data.phi(&a)?, data.phi(&b)?);
        if data.phi(&a.concatenate(&b)?)? != pa.concat(&pb)
            || data.phi(&a.reverse())? != pa.inverse()
        {
            violations += 1;
        }
    }

    let mut r = Report::default();
    r.kv("loops", loops.len());
    r.kv("homotopic_pairs_certified", certified);
    r.kv("word_comparisons_undecided", undecided);
    r.kv("edge_moves_checked", moves_checked);
    r.kv("random_trials", settings.random_trials);
    r.kv("seed", settings.seed);
    r.kv("violations", violations);
    r.kv("status", if violations == 0 { "ok" } else { "failed" });
    Ok((r.0, violations))
}

/// Pushout presentation of two overlapping images and its abelian
/// invariants, compared with those of the union.
pub fn svk_report(u: &DigitalImage, v: &DigitalImage) -> Result<String> {
    let g = glue_images(u, v)?;
    let h_push = abelianization(&g.pushout);
    let h_whole = abelianization(&g.union);
    let mut r = Report::default();
    r.kv("disconnected_complements", true);
    r.kv("intersection_points", g.intersection.len());
    r.kv("basepoint", &g.basepoint);
    r.kv("pushout_generators", g.pushout.generator_count());
    r.kv("pushout_relators", g.pushout.relator_count());
    r.kv(
        "pushout",
        tietze_simplify(&g.pushout, DEFAULT_TIETZE_PASSES),
    );
    r.kv("H1", &h_push);
    r.kv("H1_union", &h_whole);
    r.kv("consistent", h_push == h_whole);
    Ok(r.0)
}

#[derive(Parser, Debug)]
#[command(name = "digipi", about = "Fundamental groups of digital images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector, edge-group presentation, H1 and bounded order
    Analyze {
        image: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Print a named image as .dimg
    Construct {
        /// diamond | circle | double-diamond | rp2 | interval
        name: String,
        n: Option<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// Embed a graph file as a digital image
    EmbedGraph { graph: String },
    /// Realize a .pres as a digital image
    Realize {
        presentation: String,
        #[arg(long)]
        verify: bool,
    },
    /// Free rank of a connected planar image
    Rank2d {
        image: String,
        #[arg(long)]
        explain: bool,
    },
    /// Pushout presentation of two overlapping images
    Svk { u: String, v: String },
    /// Cross-check loop words against the homotopy oracle
    Verify {
        image: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
    },
    /// DOT rendering of the adjacency graph
    ExportDot { image: String },
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))
}

fn check_lines(checks: &[(String, bool)]) -> (String, bool) {
    let mut out = String::new();
    let mut ok = true;
    for (name, pass) in checks {
        ok &= pass;
        let _ = writeln!(
            out,
            "# verify: {} {name}",
            if *pass { "PASS" } else { "FAIL" }
        );
    }
    (out, ok)
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Analyze { image, max_cosets } => {
            let x = parse_image(&read(&image)?)?;
            Ok((0, analyze_report(&x, max_cosets)?))
        }
        Command::Construct { name, n, verify } => {
            let x = construct(&name, n)?;
            let mut out = String::new();
            let mut ok = true;
            if verify {
                let (lines, pass) = check_lines(&verify_construction(&name, n, &x));
                out.push_str(&lines);
                ok = pass;
            }
            out.push_str(&serialize_image(&x));
            Ok((if ok { 0 } else { 1 }, out))
        }
        Command::EmbedGraph { graph } => {
            let g = parse_graph(&read(&graph)?)?;
            let e = embed_graph(&g)?;
            let mut out = String::new();
            for (v, &i) in e.point_of.iter().enumerate() {
                let _ = writeln!(out, "# vertex {v} -> {}", e.image.point(i));
            }
            out.push_str(&serialize_image(&e.image));
            Ok((0, out))
        }
        Command::Realize {
            presentation,
            verify,
        } => {
            let p = parse_presentation(&read(&presentation)?)?;
            let r = realize_presentation(&p)?;
            let mut out = String::new();
            let mut ok = true;
            if verify {
                let k = two_skeleton(r.image());
                let data = EdgeGroupData::new(k.clone())?;
                let checks = vec![
                    (
                        "flag triangles == designed triangles".to_string(),
                        r.triangles_match_design(),
                    ),
                    ("no 4-cliques".to_string(), max_clique_size(k.graph()) <= 3),
                    (
                        format!("H1 == {}", abelianization(&p)),
                        abelianization(data.presentation()) == abelianization(&p),
                    ),
                ];
                let (lines, pass) = check_lines(&checks);
                out.push_str(&lines);
                ok = pass;
            }
            out.push_str(&serialize_image(r.image()));
            Ok((if ok { 0 } else { 1 }, out))
        }
        Command::Rank2d { image, explain } => {
            let x = parse_image(&read(&image)?)?;
            let (rank, steps) = free_rank_explained(&x)?;
            let mut out = format!("rank = {rank}\n");
            if explain {
                for s in steps {
                    let _ = writeln!(out, "{s}");
                }
            }
            Ok((0, out))
        }
        Command::Svk { u, v } => {
            let u = parse_image(&read(&u)?)?;
            let v = parse_image(&read(&v)?)?;
            Ok((0, svk_report(&u, &v)?))
        }
        Command::Verify {
            image,
            seed,
            max_length,
        } => {
            let x = parse_image(&read(&image)?)?;
            let settings = VerifySettings {
                seed,
                max_length,
                ..VerifySettings::default()
            };
            let (text, violations) = verify_report(&x, settings)?;
            Ok((if violations == 0 { 0 } else { 1 }, text))
        }
        Command::ExportDot { image } => {
            let x = parse_image(&read(&image)?)?;
            Ok((0, export_dot(&x)))
        }
    }
}

/// Runs one command line (including the program name). Exit codes: 0
/// success, 1 failed hypothesis or domain error, 2 usage or parse error.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(r) => r,
        Err(e @ (Error::Parse { .. } | Error::Usage(_))) => (2, format!("error: {e}\n")),
        Err(e) => (1, format!("error: {e}\n")),
    }
}
