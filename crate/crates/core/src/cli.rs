//! Command-line front end.
//!
//! Every command produces a [`Report`]: human text, an optional JSON document
//! (with `--json`) and an exit status. Exit codes: 0 ok, 1 other failure,
//! 2 parse error, 3 not covered by a catalog or table, 4 guard exceeded.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dynkin::{build_diagram, DiagramSpec, DynkinDiagram, RootSystem, Weight, DEFAULT_ORBIT_GUARD};
use crate::linspaces::{
    ambient_module, cone_of_lines, exposed_planes_catalog, line_classes, max_linear_space, planes, reconstruct_diagram,
    tits_shadow, DEFAULT_EXT_GUARD,
};
use crate::octonion::verify_suite;
use crate::parabolic::{
    closed_orbit_y1, dimension, grading, is_cominuscule, is_exposed_short, is_minuscule_weight, MarkedDiagram,
    ParabolicSpec,
};
use crate::prolong::{strict_prolongation_report, DEFAULT_POLY_GUARD};
use crate::reps::{
    dominant_character, restrict_to_levi, verify_normal_space, weyl_dim, Family, DEFAULT_DIM_GUARD,
};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 1729;
pub const JSON_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "homvar", version, about = "Exact computations on rational homogeneous varieties G/P")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Maximal Weyl orbit size.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_GUARD)]
    pub orbit_guard: u64,
    /// Maximal module dimension for weight enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_GUARD)]
    pub dim_guard: u64,
    /// Maximal dimension of exterior powers.
    #[arg(long, global = true, default_value_t = DEFAULT_EXT_GUARD)]
    pub ext_guard: u64,
    /// Maximal polynomial-space dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_POLY_GUARD)]
    pub poly_guard: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, exposed short roots and tangent grading dimensions.
    Info { space: String },
    /// Pieces of the graded tangent space.
    Grading { space: String },
    /// Cominuscule, minuscule and exposed-short flags and Y1 for each node of S.
    Classify { space: String },
    /// Families of lines, or the cone of lines of one class.
    Lines {
        space: String,
        #[arg(long = "class")]
        class: Option<usize>,
    },
    /// Families of P^k's of a given class.
    Planes {
        space: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long = "class")]
        class: Option<usize>,
    },
    /// Shadow in G/P_S of a point of G/P_S' (`--from P{..}`).
    Shadow {
        space: String,
        #[arg(long)]
        from: String,
    },
    /// Rebuild the Dynkin diagram from G/P_i.
    Reconstruct { space: String },
    /// Representation data.
    Rep {
        #[command(subcommand)]
        query: RepCommand,
    },
    /// dim A^(k−2) of the second fundamental form against dim N_k.
    Prolong {
        space: String,
        /// Largest k.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Octonion identities, model kernels and base-locus probes.
    OctonionVerify {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RepCommand {
    /// Weyl dimension, e.g. `rep dim E7 w7`.
    Dim { group: String, weight: String },
    /// Dominant weights with multiplicities.
    Weights { group: String, weight: String },
    /// Restriction to the Levi factor of P_S, graded.
    Levi { space: String, weight: String },
    /// Ambient module of the P^k's through an end node.
    Ambient {
        group: String,
        #[arg(long)]
        end: usize,
        #[arg(long)]
        k: usize,
    },
    /// Normal space N_j as the common constituent of S^jT and V.
    Normal {
        space: String,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub json: Option<Value>,
    pub status: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json: Some(json), status: 0 }
    }

    /// What goes to stdout.
    pub fn stdout(&self, as_json: bool) -> String {
        if as_json {
            if let Some(j) = &self.json {
                return serde_json::to_string_pretty(j).unwrap() + "\n";
            }
        }
        self.text.clone()
    }
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidRank { .. } => 2,
        Error::Uncovered(_) | Error::ExposedShort(_) => 3,
        Error::Guard { .. } => 4,
        _ => 1,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn envelope(command: &str, input: Value, data: Value) -> Value {
    json!({ "schema": JSON_SCHEMA, "command": command, "input": input, "data": data })
}

fn parse_space(s: &str) -> Result<ParabolicSpec> {
    s.parse()
}

fn parse_group(s: &str) -> Result<DiagramSpec> {
    s.parse()
}

/// Weights as `w7`, `2w1+w3`, `0` or a mark vector `[1,0,2]`.
pub fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let t = s.trim();
    if let Some(body) = t.strip_prefix('[') {
        let Some(body) = body.strip_suffix(']') else {
            return Err(Error::parse(s, t.len(), "missing ']'"));
        };
        let mut marks = Vec::new();
        let mut pos = 1;
        for part in body.split(',') {
            let m: i64 = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(s, pos, format!("bad mark '{}'", part.trim())))?;
            if m < 0 {
                return Err(Error::parse(s, pos, "marks must be non-negative"));
            }
            marks.push(m);
            pos += part.len() + 1;
        }
        if marks.len() != rank {
            return Err(Error::parse(s, 0, format!("expected {rank} marks, got {}", marks.len())));
        }
        return Ok(Weight { marks });
    }
    let mut w = Weight::zero(rank);
    if t == "0" {
        return Ok(w);
    }
    let mut pos = 0;
    for part in t.split('+') {
        let Some(wi) = part.find(['w', 'ω']) else {
            return Err(Error::parse(s, pos, "expected a term like 2w1"));
        };
        let coef = if wi == 0 {
            1
        } else {
            part[..wi].parse::<i64>().map_err(|_| Error::parse(s, pos, format!("bad coefficient '{}'", &part[..wi])))?
        };
        let idx_str = &part[wi + part[wi..].chars().next().unwrap().len_utf8()..];
        let idx: usize = idx_str
            .parse()
            .map_err(|_| Error::parse(s, pos + wi + 1, format!("bad index '{idx_str}'")))?;
        if idx == 0 || idx > rank {
            return Err(Error::parse(s, pos + wi + 1, format!("index {idx} out of range 1..{rank}")));
        }
        w.marks[idx - 1] += coef;
        pos += part.len() + 1;
    }
    Ok(w)
}

/// `w1+2w3`-style rendering of marks on original node labels.
pub fn weight_name(marks: &BTreeMap<usize, i64>) -> String {
    let parts: Vec<String> = marks
        .iter()
        .filter(|(_, &m)| m != 0)
        .map(|(n, &m)| if m == 1 { format!("w{n}") } else { format!("{m}w{n}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn weight_marks(r: &RootSystem, w: &Weight) -> BTreeMap<usize, i64> {
    r.nodes().iter().map(|&n| (n, w.marks[r.pos(n)])).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------------------
// diagram rendering

fn superscript(m: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    m.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

fn glyph(marks: &BTreeMap<usize, u32>, n: usize) -> String {
    match marks.get(&n) {
        Some(&m) if m > 1 => format!("●{}", superscript(m)),
        Some(_) => "●".into(),
        None => "○".into(),
    }
}

fn bond_glyph(d: &DynkinDiagram, left: usize, right: usize) -> char {
    let e = d.edge(left, right).expect("adjacent");
    let to_right = e.arrow_to == Some(right);
    match e.bond {
        1 => '—',
        2 if to_right => '⇒',
        2 => '⇐',
        3 if to_right => '⇛',
        _ => '⇚',
    }
}

/// Longest simple path; ties go to the lexicographically smallest sequence
/// read from its smaller end.
fn main_chain(d: &DynkinDiagram, comp: &BTreeSet<usize>) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for &start in comp {
        let mut stack = vec![vec![start]];
        while let Some(p) = stack.pop() {
            let last = *p.last().unwrap();
            let mut extended = false;
            for m in d.neighbors(last) {
                if comp.contains(&m) && !p.contains(&m) {
                    let mut q = p.clone();
                    q.push(m);
                    stack.push(q);
                    extended = true;
                }
            }
            if !extended {
                let mut cand = p.clone();
                if cand.first() > cand.last() {
                    cand.reverse();
                }
                if cand.len() > best.len() || (cand.len() == best.len() && cand < best) {
                    best = cand;
                }
            }
        }
    }
    best
}

fn render_component(d: &DynkinDiagram, comp: &BTreeSet<usize>, marks: &BTreeMap<usize, u32>) -> Vec<String> {
    let chain = main_chain(d, comp);
    let mut top = String::new();
    let mut cols = Vec::new();
    for (k, &n) in chain.iter().enumerate() {
        if k > 0 {
            top.push(bond_glyph(d, chain[k - 1], n));
        }
        cols.push(top.chars().count());
        top.push_str(&glyph(marks, n));
    }
    let mut lines = vec![top];
    let on_chain: BTreeSet<usize> = chain.iter().copied().collect();
    for (k, &n) in chain.iter().enumerate() {
        // hanging branch: walk down from the chain node
        let mut prev = n;
        let mut cur: Option<usize> = d.neighbors(n).into_iter().find(|m| comp.contains(m) && !on_chain.contains(m));
        let mut row = 1;
        while let Some(m) = cur {
            let bond = d.edge(prev, m).unwrap().bond;
            let v = match bond {
                1 => "│".to_string(),
                2 => "‖".to_string(),
                _ => "⦀".to_string(),
            };
            put(&mut lines, row, cols[k], &v);
            put(&mut lines, row + 1, cols[k], &glyph(marks, m));
            row += 2;
            let next = d.neighbors(m).into_iter().find(|x| *x != prev && comp.contains(x) && !on_chain.contains(x));
            prev = m;
            cur = next;
        }
    }
    lines
}

fn put(lines: &mut Vec<String>, row: usize, col: usize, s: &str) {
    while lines.len() <= row {
        lines.push(String::new());
    }
    let line = &mut lines[row];
    let len = line.chars().count();
    if len < col {
        line.push_str(&" ".repeat(col - len));
    }
    line.push_str(s);
}

/// Text picture of a marked diagram: ● marked (superscript for marks > 1),
/// ○ unmarked, — ⇒ ⇛ for bonds with the arrow towards the shorter root.
/// Branches hang below their attachment node; components sit side by side.
pub fn render_marked_diagram(md: &MarkedDiagram) -> String {
    let d = &md.diagram;
    if d.rank() == 0 {
        return "·".into();
    }
    let blocks: Vec<Vec<String>> = d.components().iter().map(|c| render_component(d, c, &md.marks)).collect();
    let height = blocks.iter().map(|b| b.len()).max().unwrap();
    let widths: Vec<usize> = blocks.iter().map(|b| b.iter().map(|l| l.chars().count()).max().unwrap()).collect();
    let mut out = Vec::new();
    for row in 0..height {
        let mut line = String::new();
        for (bi, b) in blocks.iter().enumerate() {
            if bi > 0 {
                line.push_str("   ");
            }
            let s = b.get(row).cloned().unwrap_or_default();
            let pad = widths[bi] - s.chars().count();
            line.push_str(&s);
            if bi + 1 < blocks.len() {
                line.push_str(&" ".repeat(pad));
            }
        }
        out.push(line.trim_end().to_string());
    }
    out.join("\n")
}

fn space_diagram(ps: &ParabolicSpec) -> String {
    render_marked_diagram(&MarkedDiagram::with_nodes(ps.diagram(), &ps.s))
}

// ---------------------------------------------------------------------------
// commands

fn cmd_info(ps: &ParabolicSpec) -> Result<Report> {
    let r = ps.root_system();
    let g = grading(ps)?;
    let dim = dimension(ps);
    let mut exposed = Vec::new();
    for &j in &ps.s {
        if is_exposed_short(&r, &ps.s, j)? {
            exposed.push(j);
        }
    }
    let dims = g.dims();
    let t: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let levi: Vec<String> = g.levi.iter().map(|c| c.spec.to_string()).collect();
    let mut text = format!("dim {dim}; exposed short: {}; T: {}\n", yes(!exposed.is_empty()), t.join(" ⊕ "));
    text += &format!("{ps}\n{}\n", space_diagram(ps));
    text += &format!("H: {}\n", if levi.is_empty() { "trivial".into() } else { levi.join(" × ") });
    if exposed.len() > 1 || (exposed.len() == 1 && ps.s.len() > 1) {
        text += &format!("exposed short nodes: {exposed:?}\n");
    }
    let data = json!({
        "space": ps.to_string(),
        "dim": dim,
        "exposed_short": !exposed.is_empty(),
        "exposed_short_nodes": exposed,
        "tangent_dims": dims,
        "levi": levi,
    });
    Ok(Report::ok(text, envelope("info", json!(ps.to_string()), data)))
}

fn cmd_grading(ps: &ParabolicSpec) -> Result<Report> {
    let g = grading(ps)?;
    let mut text = format!("{ps}: {} pieces, dim {}\n", g.pieces.len(), dimension(ps));
    for p in &g.pieces {
        let lowest: Vec<String> = p.lowest_root.coeffs.iter().map(|c| c.to_string()).collect();
        text += &format!(
            "  T{:?}  dim {}  highest weight {}  lowest root ({})  curve degree ≤ {}\n",
            p.degree,
            p.dim,
            weight_name(&p.h_highest_weight),
            lowest.join(","),
            p.curve_degree_bound
        );
    }
    Ok(Report::ok(text, envelope("grading", json!(ps.to_string()), to_value(&g))))
}

fn cmd_classify(ps: &ParabolicSpec) -> Result<Report> {
    let r = ps.root_system();
    let mut text = format!("{ps}\n{}\n", space_diagram(ps));
    let mut rows = Vec::new();
    for &i in &ps.s {
        let comin = is_cominuscule(&r, i);
        let minu = is_minuscule_weight(&r, i)?;
        let exposed = is_exposed_short(&r, &ps.s, i)?;
        let y1 = closed_orbit_y1(ps, i)?;
        text += &format!(
            "node {i}: cominuscule {}; minuscule {}; exposed short {}; Y1 = {} (dim {}){}\n",
            yes(comin),
            yes(minu),
            yes(exposed),
            y1.describe(),
            y1.dim(),
            if y1.is_exceptional() { "; not Levi-minuscule" } else { "" }
        );
        rows.push(json!({
            "node": i,
            "cominuscule": comin,
            "minuscule": minu,
            "exposed_short": exposed,
            "y1": y1.describe(),
            "y1_dim": y1.dim(),
            "y1_levi_minuscule": !y1.is_exceptional(),
            "y1_model": to_value(&y1),
        }));
    }
    Ok(Report::ok(text, envelope("classify", json!(ps.to_string()), json!(rows))))
}

fn cmd_lines(ps: &ParabolicSpec, class: Option<usize>) -> Result<Report> {
    if let Some(a) = class {
        let c = cone_of_lines(ps, a)?;
        let text = format!(
            "{ps}, class {a}: cone of lines through a point has dim {}; closed orbit {} (dim {}); exposed short {}\n",
            c.dim,
            c.closed_name,
            c.closed_dim,
            yes(c.exposed_short)
        );
        return Ok(Report::ok(text, envelope("lines", json!({"space": ps.to_string(), "class": a}), to_value(&c))));
    }
    let fams = line_classes(ps)?;
    let mut text = format!("{ps}: {} line classes\n", fams.len());
    for f in &fams {
        text += &format!("  class {}: closed orbit {} (dim {})", f.class_node, f.closed_name, f.closed_dim);
        if let Some(o) = f.open_dim {
            text += &format!("; exposed short, open orbit dim {o}");
        }
        text += "\n";
    }
    Ok(Report::ok(text, envelope("lines", json!({"space": ps.to_string()}), to_value(&fams))))
}

fn cmd_planes(ps: &ParabolicSpec, k: usize, class: Option<usize>) -> Result<Report> {
    let alpha = match class.or(ps.single()) {
        Some(a) => a,
        None => return Err(Error::Invalid("--class is required when S has several nodes".into())),
    };
    let input = json!({"space": ps.to_string(), "class": alpha, "k": k});
    match planes(ps, alpha, k) {
        Ok(fams) => {
            let max = max_linear_space(ps, alpha)?;
            let mut text = format!("{ps}, class {alpha}: {} families of P^{k} (max linear space P^{max})\n", fams.len());
            for f in &fams {
                text += &format!(
                    "  chain {:?} removed {:?}: parameter {} (dim {})\n",
                    f.chain, f.removed_nodes, f.parameter_name, f.parameter_dim
                );
            }
            let data = json!({"families": to_value(&fams), "max_linear_space": max});
            Ok(Report::ok(text, envelope("planes", input, data)))
        }
        Err(Error::ExposedShort(_)) => {
            let cat = exposed_planes_catalog(ps, alpha)?;
            let mut text = format!("{}: exposed short class {alpha}, catalog entry\n", cat.space);
            for f in cat.families.iter().filter(|f| f.k == k) {
                text += &format!("  P^{}: parameter {}", f.k, f.parameter);
                if let Some(d) = f.parameter_dim {
                    text += &format!(" (dim {d})");
                }
                text += &format!("; {} component(s)", f.components);
                if let Some(o) = f.orbits {
                    text += &format!("; {o} orbit(s)");
                }
                if let Some(c) = &f.closed_orbit {
                    text += &format!("; closed orbit {c}");
                }
                if f.maximal {
                    text += "; maximal";
                }
                text += "\n";
            }
            if !cat.families.iter().any(|f| f.k == k) {
                text += &format!("  no P^{k} families\n");
            }
            text += &format!("  maximal linear spaces through a point: {:?}\n", cat.maximal_through_point);
            for n in &cat.notes {
                text += &format!("  note: {n}\n");
            }
            Ok(Report::ok(text, envelope("planes", input, json!({"catalog": to_value(&cat)}))))
        }
        Err(e) => Err(e),
    }
}

fn cmd_shadow(ps: &ParabolicSpec, from: &str) -> Result<Report> {
    let full = if from.contains('/') { from.to_string() } else { format!("{}/{}", ps.spec, from) };
    let src: ParabolicSpec = full.parse()?;
    if src.spec != ps.spec {
        return Err(Error::Invalid(format!("{src} and {ps} have different groups")));
    }
    let md = tits_shadow(ps.spec, &ps.s, &src.s)?;
    let name = md.describe();
    let dim = md.dimension();
    let text = format!("shadow in {ps} of a point of {src}: {name} (dim {dim})\n{}\n", render_marked_diagram(&md));
    let data = json!({"shadow": to_value(&md), "name": name, "dim": dim});
    Ok(Report::ok(text, envelope("shadow", json!({"space": ps.to_string(), "from": src.to_string()}), data)))
}

fn cmd_reconstruct(ps: &ParabolicSpec) -> Result<Report> {
    let Some(i) = ps.single() else {
        return Err(Error::Invalid("reconstruction needs a maximal parabolic".into()));
    };
    let t = reconstruct_diagram(ps.spec, i)?;
    let mut text = format!("{ps}\n");
    for s in &t.steps {
        text += &format!("  level {}: {}\n", s.level, s.descriptor);
    }
    let iso: Vec<String> = t.isomorphism.iter().map(|(a, b)| format!("{a}→{b}")).collect();
    text += &format!("result: {} nodes, isomorphic to {} via {}\n", t.result.rank(), ps.spec, iso.join(" "));
    text += &render_marked_diagram(&MarkedDiagram::with_nodes(t.result.clone(), &[1].into_iter().collect()));
    text += "\n";
    let data = json!({"trace": to_value(&t), "chain": t.chain(), "isomorphic_to": ps.spec.to_string()});
    Ok(Report::ok(text, envelope("reconstruct", json!(ps.to_string()), data)))
}

fn cmd_rep(q: &RepCommand, cli: &Cli) -> Result<Report> {
    match q {
        RepCommand::Dim { group, weight } => {
            let spec = parse_group(group)?;
            let r = RootSystem::of(spec);
            let w = parse_weight(weight, spec.rank)?;
            let dim = weyl_dim(&r, &w)?;
            let name = weight_name(&weight_marks(&r, &w));
            let data = json!({"group": spec.to_string(), "weight": w.marks, "dim": dim.to_string()});
            Ok(Report::ok(format!("{dim}\n"), envelope("rep dim", json!({"group": group, "weight": name}), data)))
        }
        RepCommand::Weights { group, weight } => {
            let spec = parse_group(group)?;
            let r = RootSystem::of(spec);
            let w = parse_weight(weight, spec.rank)?;
            let dim = weyl_dim(&r, &w)?;
            if dim > cli.dim_guard as u128 {
                return Err(Error::guard("rep weights", dim as u64, cli.dim_guard));
            }
            let ch = dominant_character(&r, &w)?;
            let mut text = format!("V({}) of {spec}: dim {dim}\n", weight_name(&weight_marks(&r, &w)));
            let mut rows = Vec::new();
            for (mu, m) in ch.iter().rev() {
                let orbit = r.weyl_orbit(mu, &r.nodes().iter().copied().collect(), cli.orbit_guard)?.len();
                text += &format!("  {}  mult {m}  orbit {orbit}\n", weight_name(&weight_marks(&r, mu)));
                rows.push(json!({"weight": mu.marks, "mult": m, "orbit": orbit}));
            }
            let data = json!({"dim": dim.to_string(), "dominant": rows});
            Ok(Report::ok(text, envelope("rep weights", json!({"group": group, "weight": weight}), data)))
        }
        RepCommand::Levi { space, weight } => {
            let ps = parse_space(space)?;
            let r = ps.root_system();
            let w = parse_weight(weight, ps.spec.rank)?;
            let dec = restrict_to_levi(&r, &w, &ps.s, cli.dim_guard)?;
            let mut text = format!("V({}) restricted to the Levi of {ps}: dim {}\n", weight_name(&weight_marks(&r, &w)), dec.total_dim());
            for t in &dec.terms {
                let mult = if t.mult > 1 { format!("{}×", t.mult) } else { String::new() };
                text += &format!("  grade {:?}: {mult}{} (dim {})\n", t.grade, weight_name(&t.weight), t.dim);
            }
            Ok(Report::ok(text, envelope("rep levi", json!({"space": ps.to_string(), "weight": weight}), to_value(&dec))))
        }
        RepCommand::Ambient { group, end, k } => {
            let spec = parse_group(group)?;
            let r = RootSystem::of(spec);
            let m = ambient_module(spec, *end, *k, cli.ext_guard)?;
            let name = weight_name(&weight_marks(&r, &m.weight));
            let tag = serde_json::to_value(m.tag).unwrap().as_str().unwrap().to_string();
            let text = format!(
                "{spec}, end node {end}, k = {k}: V({name}), dim {}; branch {:?}; {tag}\n",
                m.dim, m.branch
            );
            Ok(Report::ok(text, envelope("rep ambient", json!({"group": group, "end": end, "k": k}), to_value(&m))))
        }
        RepCommand::Normal { space, j } => {
            let ps = parse_space(space)?;
            let rep = verify_normal_space(&ps, *j, cli.dim_guard)?;
            let common: Vec<String> = rep.common.iter().map(weight_name).collect();
            let text = format!(
                "{}: N_{j} = {} ; common constituents of S^{j}T and V: {} ; {}\n",
                rep.space,
                rep.expected_expr,
                if common.is_empty() { "none".into() } else { common.join(", ") },
                if rep.ok { "verified" } else { "MISMATCH" }
            );
            let mut report = Report::ok(text, envelope("rep normal", json!({"space": ps.to_string(), "j": j}), to_value(&rep)));
            if !rep.ok {
                report.status = 1;
            }
            Ok(report)
        }
    }
}

fn cmd_prolong(ps: &ParabolicSpec, order: Option<usize>, cli: &Cli) -> Result<Report> {
    let family = Family::of(ps)?;
    let length = crate::reps::normal_table(family).length;
    let kmax = order.unwrap_or(length + 1).max(2);
    let rep = strict_prolongation_report(family, kmax, cli.poly_guard)?;
    let mut text = format!("{} ({} chart variables)\n", rep.family, rep.nvars);
    for row in &rep.rows {
        text += &format!(
            "  dim A^({}) = {}  dim N_{} = {}  {}\n",
            row.order,
            row.dim,
            row.order + 2,
            row.expected,
            if row.ok { "ok" } else { "MISMATCH" }
        );
    }
    let mut report = Report::ok(text, envelope("prolong", json!({"space": ps.to_string(), "order": kmax}), to_value(&rep)));
    if !rep.ok {
        report.status = 1;
    }
    Ok(report)
}

fn cmd_octonion(samples: usize, points: usize, seed: u64) -> Result<Report> {
    if points == 0 || samples == 0 {
        return Err(Error::Invalid("--samples and --points must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = verify_suite(&mut rng, samples, points);
    let mut text = String::new();
    for c in &rep.checks {
        text += &format!("{} {}/{}  {}\n", if c.ok() { "ok  " } else { "FAIL" }, c.passed, c.total, c.name);
    }
    text += &format!(
        "tangent kernels at the base point: A∘B = 0 dim {}, AB = 0 dim {}; G2/P1 tangent dim {}; null L_v kernel dim {}\n",
        rep.tangent_dims.0, rep.tangent_dims.1, rep.g2_tangent_dim, rep.left_kernel_dim
    );
    for (name, p) in &rep.probes {
        text += &format!("base locus {name}: projective dim {} (rank {}, second point {})\n", p.projective_dim, p.rank, p.second_rank);
    }
    let mut report = Report::ok(text, envelope("octonion-verify", json!({"samples": samples, "points": points, "seed": seed}), to_value(&rep)));
    if !rep.ok() {
        report.status = 1;
    }
    Ok(report)
}

/// Execute a parsed command.
pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Info { space } => cmd_info(&parse_space(space)?),
        Command::Grading { space } => cmd_grading(&parse_space(space)?),
        Command::Classify { space } => cmd_classify(&parse_space(space)?),
        Command::Lines { space, class } => cmd_lines(&parse_space(space)?, *class),
        Command::Planes { space, k, class } => cmd_planes(&parse_space(space)?, *k, *class),
        Command::Shadow { space, from } => cmd_shadow(&parse_space(space)?, from),
        Command::Reconstruct { space } => cmd_reconstruct(&parse_space(space)?),
        Command::Rep { query } => cmd_rep(query, cli),
        Command::Prolong { space, order } => cmd_prolong(&parse_space(space)?, *order, cli),
        Command::OctonionVerify { samples, points } => cmd_octonion(*samples, *points, cli.seed),
    }
}

/// Outcome of a full invocation: stdout, stderr and exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = e.exit_code();
            let msg = e.render().to_string();
            return if status == 0 {
                Outcome { stdout: msg, stderr: String::new(), status }
            } else {
                Outcome { stdout: String::new(), stderr: msg, status }
            };
        }
    };
    match run(&cli) {
        Ok(r) => Outcome { stdout: r.stdout(cli.json), stderr: String::new(), status: r.status },
        Err(e) => {
            let status = exit_code(&e);
            let stdout = if cli.json {
                let err = json!({"schema": JSON_SCHEMA, "error": e.to_string(), "status": status});
                serde_json::to_string_pretty(&err).unwrap() + "\n"
            } else {
                String::new()
            };
            Outcome { stdout, stderr: format!("error: {e}\n"), status }
        }
    }
}

/// Diagram of a series at a rank, marked at the given nodes.
pub fn marked(spec: DiagramSpec, nodes: &[usize]) -> MarkedDiagram {
    MarkedDiagram::with_nodes(build_diagram(spec), &nodes.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::Series;

    fn sp(s: Series, n: usize) -> DiagramSpec {
        DiagramSpec::new(s, n).unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(render_marked_diagram(&marked(sp(Series::F, 4), &[4])), "○—○⇒○—●");
        assert_eq!(render_marked_diagram(&marked(sp(Series::A, 3), &[1, 3])), "●—○—●");
        assert_eq!(render_marked_diagram(&marked(sp(Series::D, 5), &[5])), "○—○—○—○\n    │\n    ●");
        assert_eq!(render_marked_diagram(&marked(sp(Series::E, 6), &[1])), "●—○—○—○—○\n    │\n    ○");
        assert_eq!(render_marked_diagram(&marked(sp(Series::C, 3), &[3])), "○—○⇐●");
        assert_eq!(render_marked_diagram(&marked(sp(Series::B, 3), &[1])), "●—○⇒○");
        assert_eq!(render_marked_diagram(&marked(sp(Series::G, 2), &[2])), "○⇚●");
        let mut md = marked(sp(Series::A, 2), &[1]);
        md.marks.insert(1, 2);
        assert_eq!(render_marked_diagram(&md), "●²—○");
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("w7", 7).unwrap(), Weight::fundamental(7, 6));
        assert_eq!(parse_weight("2w1+w3", 3).unwrap().marks, vec![2, 0, 1]);
        assert_eq!(parse_weight("[1,0,2]", 3).unwrap().marks, vec![1, 0, 2]);
        assert_eq!(parse_weight("0", 2).unwrap().marks, vec![0, 0]);
        assert!(matches!(parse_weight("w9", 7), Err(Error::Parse { .. })));
        assert!(matches!(parse_weight("x", 7), Err(Error::Parse { .. })));
    }

    #[test]
    fn outcomes() {
        let o = run_args(["homvar", "info", "F4/P4"]);
        assert_eq!(o.status, 0);
        assert_eq!(o.stdout.lines().next().unwrap(), "dim 15; exposed short: yes; T: 8 ⊕ 7");
        assert_eq!(run_args(["homvar", "rep", "dim", "E7", "w7"]).stdout, "56\n");
        assert_eq!(run_args(["homvar", "planes", "X9/P1"]).status, 2);
        assert_eq!(run_args(["homvar", "planes", "D7/P7", "--k", "3"]).status, 0);
        assert_eq!(run_args(["homvar", "rep", "weights", "E8", "w4", "--dim-guard", "1000"]).status, 4);
    }
}
