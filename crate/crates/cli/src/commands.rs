//! One function per subcommand. Each appends to the report and returns
//! the exit code, or a [`Failure`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gerbe_core::algebra::{automorphism_structure, bar_differential, group_cohomology, AutStructure, FiniteGroup};
use gerbe_core::cohomology::{
    cech_cohomology, cech_complex, classify_bound_gerbes, groupoid_cohomology, groupoid_differential, GroupoidModule,
    Side,
};
use gerbe_core::extension::{
    band, band_class, extension_from_cocycle, validate_cocycle, BandClass, GroupoidExtension, KernelTrivialization,
    NonAbelianCocycle, Sites,
};
use gerbe_core::groupoid::{CechGroupoid, CoverMode, CoverModel, FiniteGroupoid};
use gerbe_core::io::{cocycle_to_spec, Artifact, IoError, Workspace};
use gerbe_core::morita::{
    check_band_morita, check_cohomology_morita, pullback_extension, refinement_extension, MoritaData,
};
use gerbe_core::Limits;

use crate::{Cli, CohomologyTarget, Command, Failure, MoritaArgs, SideArg};

type Report<'a> = &'a mut String;

macro_rules! line {
    ($out:expr) => { $out.push('\n') };
    ($out:expr, $($arg:tt)*) => {{ let _ = writeln!($out, $($arg)*); }};
}

pub fn dispatch(cli: &Cli, out: Report) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { files } => validate(cli, files, out),
        Command::Classify { group, cover, files } => classify(cli, group, cover, files, out),
        Command::Band { cocycle, files } => band_cmd(cli, cocycle.as_deref(), files, out),
        Command::Cohomology { target } => cohomology(cli, target, out),
        Command::Pullback { common, map } => {
            let ws = workspace(cli, &common.files)?;
            let map = pick(&ws, "map", map.as_deref())?;
            pullback_cmd(&ws, common, &map, true, out)
        }
        Command::Refine { common, refinement, emit } => {
            let ws = workspace(cli, &common.files)?;
            let r = pick(&ws, "refinement", refinement.as_deref())?;
            refine_cmd(&ws, common, &r, emit.as_deref(), true, out)
        }
        Command::CheckMorita { common, map, refinement } => {
            let ws = workspace(cli, &common.files)?;
            match (map, refinement) {
                (Some(m), _) => pullback_cmd(&ws, common, m, false, out),
                (None, Some(r)) => refine_cmd(&ws, common, r, None, false, out),
                (None, None) => Err(Failure::Parse("check-morita needs --map or --refinement".into())),
            }
        }
    }
}

fn workspace(cli: &Cli, files: &[PathBuf]) -> Result<Workspace, Failure> {
    let mut ws = Workspace::new(cli.limits(), cli.mode.map(Into::into));
    for f in files {
        ws.load_file(f)?;
    }
    Ok(ws)
}

/// The named artifact, or the only artifact of `kind` in the workspace.
fn pick(ws: &Workspace, kind: &str, explicit: Option<&str>) -> Result<String, Failure> {
    if let Some(n) = explicit {
        return Ok(n.to_string());
    }
    let names: Vec<&str> = ws.artifacts().filter(|a| a.kind() == kind).map(Artifact::name).collect();
    match names[..] {
        [one] => Ok(one.to_string()),
        [] => Err(Failure::Parse(format!("no {kind} loaded"))),
        _ => Err(Failure::Parse(format!("several {kind} artifacts loaded; choose one with --{kind}"))),
    }
}

fn describe_cover(c: &CoverModel) -> String {
    let nerve = c.nerve();
    let dims: Vec<String> = (0..=3).map(|k| nerve.dim(k).len().to_string()).collect();
    format!("{} points, {} sets, {}, nerve simplices {}", c.points, c.n_sets(), c.mode, dims.join("/"))
}

fn group_name(g: &FiniteGroup) -> String {
    g.name().unwrap_or("G").to_string()
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// A resolved cocycle whose relations hold.
fn checked_cocycle(ws: &Workspace, name: &str, out: Report) -> Result<NonAbelianCocycle, Failure> {
    let d = ws.cocycle(name)?;
    let report = validate_cocycle(&d);
    if !report.is_valid() {
        line!(out, "cocycle {name}: invalid ({} violations)", report.violations.len());
        for v in &report.violations {
            line!(out, "  {v}");
        }
        return Err(Failure::Invalid(format!("cocycle {name} violates the cocycle relations")));
    }
    Ok(d)
}

fn validate(cli: &Cli, files: &[PathBuf], out: Report) -> Result<i32, Failure> {
    let mut ws = Workspace::new(cli.limits(), cli.mode.map(Into::into));
    let mut order = Vec::new();
    for f in files {
        order.extend(ws.load_file(f)?);
    }
    let mut failures = 0;
    for name in &order {
        let artifact = ws.get(name).expect("loaded").clone();
        let kind = artifact.kind();
        let result = validate_one(&ws, &artifact);
        match result {
            Ok(summary) => line!(out, "{kind} {name}: ok ({summary})"),
            Err(ValidationFailure::Messages(lines)) => {
                failures += 1;
                line!(out, "{kind} {name}: invalid ({} violations)", lines.len());
                for l in lines {
                    line!(out, "  {l}");
                }
            }
            Err(ValidationFailure::Fatal(f)) => return Err(f),
        }
    }
    line!(out, "{} artifacts, {} invalid", order.len(), failures);
    Ok(if failures == 0 { 0 } else { 1 })
}

enum ValidationFailure {
    Messages(Vec<String>),
    Fatal(Failure),
}

impl From<IoError> for ValidationFailure {
    fn from(e: IoError) -> Self {
        match Failure::from(e) {
            Failure::Invalid(m) => ValidationFailure::Messages(vec![m]),
            f => ValidationFailure::Fatal(f),
        }
    }
}

fn validate_one(ws: &Workspace, a: &Artifact) -> Result<String, ValidationFailure> {
    let name = a.name();
    match a {
        Artifact::Group(_) => {
            let g = ws.group(name)?;
            Ok(format!("order {}", g.order()))
        }
        Artifact::Cover(_) => {
            let c = ws.cover(name)?;
            CechGroupoid::new(&c).map_err(|e| ValidationFailure::Messages(vec![e.to_string()]))?;
            Ok(describe_cover(&c))
        }
        Artifact::Cocycle(spec) => {
            let d = ws.cocycle(name)?;
            let report = validate_cocycle(&d);
            if !report.is_valid() {
                return Err(ValidationFailure::Messages(report.violations.iter().map(ToString::to_string).collect()));
            }
            extension_from_cocycle(&d).map_err(|e| ValidationFailure::Messages(vec![e.to_string()]))?;
            Ok(format!("group {}, cover {}, {}", spec.group, spec.cover, d.mode()))
        }
        Artifact::Refinement(spec) => {
            let (_, r) = ws.refinement(name)?;
            let fine = ws.cover(&spec.fine)?;
            let coarse = ws.cover(&spec.coarse)?;
            r.validate(&fine, &coarse).map_err(|e| ValidationFailure::Messages(vec![e.to_string()]))?;
            Ok(format!("{} -> {}", spec.fine, spec.coarse))
        }
        Artifact::Map(spec) => Ok(format!("{} points", spec.objects.len())),
        Artifact::Module(spec) => {
            match &spec.group {
                Some(g) => {
                    let group = ws.group(g)?;
                    ws.group_module(name, &group)?;
                }
                None => {
                    ws.trivial_module_rank(name)?;
                }
            }
            Ok(format!("rank {} over {}", spec.rank, spec.coeff))
        }
    }
}

fn classify(cli: &Cli, group: &str, cover: &str, files: &[PathBuf], out: Report) -> Result<i32, Failure> {
    let ws = workspace(cli, files)?;
    let g = ws.group(group)?;
    let c = ws.cover(cover)?;
    let nerve = c.nerve();
    let limits = ws.limits;
    let cls = classify_bound_gerbes(&nerve, &g, &limits)?;
    line!(out, "group {group}: order {}", g.order());
    line!(out, "cover {cover}: {}", describe_cover(&c));
    line!(
        out,
        "center: order {}, elements {{{}}}, {}",
        cls.center.len(),
        join(&cls.center, ", "),
        cls.center_structure
    );
    line!(out, "H^2(N; Z(G)) = {}", cls.h2);
    line!(out, "{} {}", cls.count, if cls.count == 1 { "class" } else { "classes" });
    let tri: Vec<String> = cls.triangles.iter().map(|t| format!("({})", join(t, ","))).collect();
    line!(out, "triangles: {}", tri.join(" "));
    match (&cls.representatives, cls.bound) {
        (Some(reps), _) => {
            for (k, r) in reps.iter().enumerate() {
                line!(out, "class {k}: [{}]", join(r, " "));
            }
            Ok(0)
        }
        (None, Some(b)) => {
            line!(out, "representatives: not enumerated");
            Err(Failure::Bound(b))
        }
        (None, None) => Ok(0),
    }
}

fn out_element(aut: &AutStructure, o: usize) -> String {
    let f = aut.lift_automorphism(o).expect("every Out element lifts");
    format!("{o} [{}]", join(&f.perm, " "))
}

fn band_cmd(cli: &Cli, cocycle: Option<&str>, files: &[PathBuf], out: Report) -> Result<i32, Failure> {
    let ws = workspace(cli, files)?;
    let name = pick(&ws, "cocycle", cocycle)?;
    let d = checked_cocycle(&ws, &name, out)?;
    let aut = automorphism_structure(&d.group, &ws.limits)?;
    let b = band(&d, &aut);
    let cech = &d.cech;
    let base = &cech.groupoid;
    line!(out, "cocycle {name}: group {}, {}", group_name(&d.group), describe_cover(&cech.cover));
    line!(out, "Aut(G): order {}, Out(G): order {}", aut.aut.order(), aut.out.order());
    line!(out, "band values:");
    let nerve_mode = d.mode() == CoverMode::NerveConstant;
    // one line per edge in nerve-constant mode, per edge and point otherwise
    let mut edges = BTreeMap::new();
    for (a, &(p, i, j)) in cech.arrows.iter().enumerate() {
        if i < j {
            edges.entry((i, j, if nerve_mode { None } else { Some(p) })).or_insert(b.values[a]);
        }
    }
    for ((i, j, p), v) in edges {
        let at = p.map(|p| format!(" at point {p}")).unwrap_or_default();
        line!(out, "  ({i},{j}){at}: {}", out_element(&aut, v));
    }
    let sites = Sites::for_cocycle(&d);
    let site_name = |s: usize| {
        if nerve_mode {
            format!("U{s}")
        } else {
            let (p, i) = cech.objects[s];
            format!("U{i} at point {p}")
        }
    };
    match band_class(&b, base, &sites, &aut.out) {
        BandClass::Trivial { eta } => {
            line!(out, "band: trivial");
            line!(out, "trivialization:");
            for (s, &v) in eta.iter().enumerate() {
                line!(out, "  {}: {}", site_name(s), out_element(&aut, v));
            }
        }
        BandClass::Nontrivial { loops } => {
            line!(out, "band: nontrivial");
            line!(out, "holonomy witnesses:");
            for w in loops {
                let (p, i, j) = cech.arrows[w.arrow];
                let cycle: Vec<String> = w.cycle.iter().map(|&s| site_name(s)).collect();
                line!(
                    out,
                    "  arrow ({i},{j}) at point {p}: loop {}, holonomy {}, class {{{}}}",
                    cycle.join(" -> "),
                    out_element(&aut, w.holonomy),
                    join(&w.conjugacy_class, ", ")
                );
            }
        }
    }
    Ok(0)
}

fn parse_coefficients(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|t| match t.trim() {
            "Z" | "0" => Ok(0),
            t => t
                .trim_start_matches("Z/")
                .parse::<u64>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Failure::Parse(format!("bad coefficient {t:?}"))),
        })
        .collect()
}

fn describe_coefficients(c: &[u64]) -> String {
    let parts: Vec<String> = c.iter().map(|&a| if a == 0 { "Z".into() } else { format!("Z/{a}") }).collect();
    parts.join(" + ")
}

fn cohomology(cli: &Cli, target: &CohomologyTarget, out: Report) -> Result<i32, Failure> {
    match target {
        CohomologyTarget::Cech { cover, coefficients, degree, files } => {
            let ws = workspace(cli, files)?;
            let c = ws.cover(cover)?;
            let coeffs = parse_coefficients(coefficients)?;
            let nerve = c.nerve();
            let h = cech_cohomology(&nerve, &coeffs, *degree)?;
            let complex = cech_complex(&nerve);
            line!(out, "cover {cover}: {}", describe_cover(&c));
            line!(out, "coefficients: {}", describe_coefficients(&coeffs));
            for k in [*degree as isize - 1, *degree as isize] {
                if k >= 0 {
                    let m = complex.diff(k);
                    line!(out, "d^{k}: C^{k} -> C^{}, {} x {}", k + 1, m.rows(), m.cols());
                }
            }
            line!(out, "H^{degree} = {h}");
            Ok(0)
        }
        CohomologyTarget::Group { group, module, degree, files } => {
            let ws = workspace(cli, files)?;
            let g = ws.group(group)?;
            let m = ws.group_module(module, &g)?;
            let h = group_cohomology(&g, &m, *degree, &ws.limits)?;
            line!(out, "group {group}: order {}", g.order());
            line!(out, "module {module}: rank {} over {}", m.rank, m.coeff);
            for k in [*degree as isize - 1, *degree as isize] {
                if k >= 0 {
                    let d = bar_differential(&g, &m, k as usize, &ws.limits)?;
                    line!(out, "d^{k}: C^{k} -> C^{}, {} x {}", k + 1, d.rows(), d.cols());
                }
            }
            line!(out, "H^{degree} = {h}");
            Ok(0)
        }
        CohomologyTarget::Groupoid { cover, group, module, degree, side, files } => {
            let ws = workspace(cli, files)?;
            let (label, gm) = match (cover, group) {
                (Some(c), _) => {
                    let cov = ws.cover(c)?;
                    let base = CechGroupoid::new(&cov)?.groupoid;
                    let (rank, coeff) = ws.trivial_module_rank(module)?;
                    (format!("Čech groupoid of {c}"), GroupoidModule::trivial(base, rank, coeff))
                }
                (None, Some(g)) => {
                    let grp = ws.group(g)?;
                    let m = ws.group_module(module, &grp)?;
                    (format!("group {g} as a one-object groupoid"), GroupoidModule::from_group_module(&grp, &m))
                }
                (None, None) => return Err(Failure::Parse("groupoid cohomology needs --cover or --group".into())),
            };
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let h = groupoid_cohomology(&gm, *degree, side, &ws.limits)?;
            line!(out, "{label}: {} objects, {} arrows", gm.base.n_objects(), gm.base.n_arrows());
            line!(out, "module {module}: over {}, {side:?} differential", gm.coeff);
            for k in [*degree, *degree + 1] {
                if k >= 1 {
                    let d = groupoid_differential(&gm, k, side)?;
                    line!(out, "d^{}: C^{} -> C^{k}, {} x {}", k - 1, k - 1, d.rows(), d.cols());
                }
            }
            line!(out, "H^{degree} = {h}");
            Ok(0)
        }
    }
}

struct Source {
    name: String,
    d: NonAbelianCocycle,
    e: GroupoidExtension,
    chi: KernelTrivialization,
    aut: AutStructure,
}

fn source(ws: &Workspace, args: &MoritaArgs, out: Report) -> Result<Source, Failure> {
    let name = pick(ws, "cocycle", args.cocycle.as_deref())?;
    let d = checked_cocycle(ws, &name, out)?;
    let (e, chi) = extension_from_cocycle(&d)?;
    let aut = automorphism_structure(&d.group, &ws.limits)?;
    Ok(Source { name, d, e, chi, aut })
}

fn shape(g: &FiniteGroupoid) -> String {
    format!("{} objects, {} arrows", g.n_objects(), g.n_arrows())
}

/// Runs both invariance checks and reports them; exit 1 unless both hold.
fn invariance(
    ws: &Workspace,
    src: &Source,
    e2: &GroupoidExtension,
    chi2: &KernelTrivialization,
    data: &MoritaData,
    module: &str,
    out: Report,
) -> Result<i32, Failure> {
    let limits: Limits = ws.limits;
    let bands = check_band_morita(&src.e, &src.chi, e2, chi2, data, &src.d.group, &src.aut)?;
    match bands.witness {
        None => line!(out, "band: pullback of the band"),
        Some(y) => line!(out, "band: differs at base arrow {y}"),
    }
    let (rank, coeff) = ws.trivial_module_rank(module)?;
    let m = GroupoidModule::trivial(src.e.base.clone(), rank, coeff);
    let coh = check_cohomology_morita(&src.e, e2, data, &m, &limits)?;
    line!(out, "cohomology with {module} (right differential):");
    for (n, (a, b)) in coh.degrees.iter().enumerate() {
        line!(out, "  H^{n}: {a} | {b}");
    }
    let holds = bands.holds && coh.holds;
    line!(out, "morita invariance: {}", if holds { "holds" } else { "fails" });
    Ok(if holds { 0 } else { 1 })
}

fn pullback_cmd(ws: &Workspace, args: &MoritaArgs, map: &str, detail: bool, out: Report) -> Result<i32, Failure> {
    let src = source(ws, args, out)?;
    let objects = &ws.map(map)?.objects;
    let pb = pullback_extension(&src.e, objects)?;
    let chi2 = pb.trivialization(&src.chi);
    line!(out, "cocycle {}: group {}", src.name, group_name(&src.d.group));
    line!(out, "map {map}: [{}]", join(objects, " "));
    if detail {
        line!(out, "base: {} -> {}", shape(&src.e.base), shape(&pb.extension.base));
        line!(out, "total: {} -> {}", shape(&src.e.total), shape(&pb.extension.total));
    }
    let data = MoritaData::Morphism(pb.base_map().clone());
    invariance(ws, &src, &pb.extension, &chi2, &data, &args.module, out)
}

fn refine_cmd(
    ws: &Workspace,
    args: &MoritaArgs,
    refinement: &str,
    emit: Option<&Path>,
    detail: bool,
    out: Report,
) -> Result<i32, Failure> {
    let src = source(ws, args, out)?;
    let (spec, r) = ws.refinement(refinement)?;
    let cocycle_spec = ws.cocycle_spec(&src.name)?;
    if spec.coarse != cocycle_spec.cover {
        return Err(Failure::Invalid(format!(
            "refinement {refinement} refines {}, but cocycle {} lives on {}",
            spec.coarse, src.name, cocycle_spec.cover
        )));
    }
    let fine = ws.cover(&spec.fine)?;
    let refined = refinement_extension(&src.d, &fine, &r)?;
    line!(out, "cocycle {}: group {}", src.name, group_name(&src.d.group));
    line!(out, "refinement {refinement}: {} -> {}, sets [{}]", spec.fine, spec.coarse, join(&r.sets, " "));
    if detail {
        line!(out, "base: {} -> {}", shape(&src.e.base), shape(&refined.extension.base));
        line!(out, "total: {} -> {}", shape(&src.e.total), shape(&refined.extension.total));
        let report = validate_cocycle(&refined.cocycle);
        line!(out, "refined cocycle: {}", if report.is_valid() { "valid" } else { "invalid" });
    }
    if let Some(path) = emit {
        let name = format!("{}-refined", src.name);
        let spec = cocycle_to_spec(&refined.cocycle, &name, &cocycle_spec.group, &spec.fine);
        let mut text = serde_json::to_string_pretty(&Artifact::Cocycle(spec)).expect("serializable");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Failure::Parse(format!("cannot write {}: {e}", path.display())))?;
        line!(out, "wrote {name}");
    }
    let data = MoritaData::Refinement(r);
    invariance(ws, &src, &refined.extension, &refined.trivialization, &data, &args.module, out)
}
