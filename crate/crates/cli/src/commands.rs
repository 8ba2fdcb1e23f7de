use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use costas_core::construct::{
    catalog, construction_table, family_classes, ArrayFamily, Constructed, ConstructionId,
    CubeFamily, Family, FieldCatalog, DEFAULT_MAX_SWEEP_ORDER,
};
use costas_core::enumerate::{
    class_report, classes_of, enumerate_costas_arrays, expand_orbits, validate_array_set,
    ClassReport, JoinMode, DEFAULT_ENUMERATION_LIMIT,
};
use costas_core::published;
use costas_core::symmetry::{
    array_class_size, canonical_array, canonical_cube, group_by_class, has_diagonal_symmetry,
    projection_set,
};
use costas_core::{
    cube_from_pair, CostasCube, FieldElement, FieldSpec, Permutation, ProjectionPair,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::formats::{cube_json, parse_cube, write_arrays, write_cube_text, ArrayFile};
use crate::{
    read_file, write_file, Cli, CliError, Command, Format, Join, Output, Pair, Target, EXIT_FAIL,
    EXIT_OK,
};

type CmdResult = Result<Output, CliError>;

pub(crate) fn dispatch(cli: &Cli) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Verify { target, path } => verify(fmt, *target, path),
        Command::Construct {
            family,
            field,
            phi,
            rho,
            psi,
            c,
        } => construct(fmt, *family, field, [phi, rho, psi], *c, cli.seed),
        Command::Enumerate {
            order,
            arrays_file,
            emit_representatives,
            join,
        } => enumerate(
            fmt,
            *order,
            arrays_file.as_deref(),
            *emit_representatives,
            *join,
        ),
        Command::Tables {
            table,
            max_order,
            census_limit,
        } => tables(fmt, *table, *max_order, *census_limit),
        Command::SdSet { path } => sd_set(fmt, path),
        Command::Classify { target, path } => classify(fmt, *target, path),
        Command::Project { path, from_pair } => project(fmt, path, *from_pair),
        Command::Import {
            path,
            expect_order,
            output,
        } => import(fmt, path, *expect_order, output.as_deref()),
    }
}

fn machine<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn done(stdout: String, code: i32) -> CmdResult {
    Ok(Output {
        stdout,
        code,
        ..Output::default()
    })
}

fn with_path(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Parse { line, message } => {
            CliError::Invalid(format!("{}: line {line}: {message}", path.display()))
        }
        CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn load_arrays(path: &Path, uniform: bool) -> Result<ArrayFile, CliError> {
    let text = read_file(path)?;
    let parsed = if uniform {
        ArrayFile::parse_uniform(&text)
    } else {
        ArrayFile::parse(&text)
    };
    parsed.map_err(|e| with_path(path, e))
}

fn load_cube(path: &Path) -> Result<CostasCube, CliError> {
    parse_cube(&read_file(path)?).map_err(|e| with_path(path, e))
}

fn verdict(p: &Permutation) -> String {
    match p.repeated_vector() {
        None => "costas".into(),
        Some((dx, dy)) => format!("not costas: repeated vector ({dx},{dy})"),
    }
}

#[derive(Serialize)]
struct ArrayVerdict {
    line: usize,
    permutation: Permutation,
    costas: bool,
    repeated_vector: Option<(usize, isize)>,
}

#[derive(Serialize)]
struct ProjectionVerdict {
    name: &'static str,
    permutation: Permutation,
    costas: bool,
    repeated_vector: Option<(usize, isize)>,
}

fn projection_verdicts(cube: &CostasCube) -> Vec<ProjectionVerdict> {
    let t = cube.projections();
    [("A", t.a), ("B", t.b), ("C", t.c)]
        .into_iter()
        .map(|(name, p)| ProjectionVerdict {
            name,
            costas: p.is_costas(),
            repeated_vector: p.repeated_vector(),
            permutation: p,
        })
        .collect()
}

fn verify(fmt: Format, target: Target, path: &Path) -> CmdResult {
    match target {
        Target::Array => {
            let file = load_arrays(path, false)?;
            let items: Vec<ArrayVerdict> = file
                .arrays
                .iter()
                .map(|(line, p)| ArrayVerdict {
                    line: *line,
                    permutation: p.clone(),
                    costas: p.is_costas(),
                    repeated_vector: p.repeated_vector(),
                })
                .collect();
            let passed = items.iter().filter(|v| v.costas).count();
            let all_pass = passed == items.len();
            let out = match fmt {
                Format::Machine => machine(
                    &serde_json::json!({ "target": "array", "items": items, "all_pass": all_pass }),
                ),
                Format::Text => {
                    let mut s = String::new();
                    for (line, p) in &file.arrays {
                        writeln!(s, "line {line}  {p}  {}", verdict(p)).unwrap();
                    }
                    writeln!(s, "{passed} of {} pass", items.len()).unwrap();
                    s
                }
            };
            done(out, if all_pass { EXIT_OK } else { EXIT_FAIL })
        }
        Target::Cube => {
            let cube = load_cube(path)?;
            let ok = cube.is_costas_cube();
            let projections = projection_verdicts(&cube);
            let out = match fmt {
                Format::Machine => machine(&serde_json::json!({
                    "target": "cube",
                    "order": cube.order(),
                    "costas_cube": ok,
                    "projections": projections,
                })),
                Format::Text => {
                    let mut s = format!(
                        "cube of order {}: {}\n",
                        cube.order(),
                        if ok {
                            "costas cube"
                        } else {
                            "not a costas cube"
                        }
                    );
                    for v in &projections {
                        writeln!(
                            s,
                            "{} {}  {}",
                            v.name,
                            v.permutation,
                            verdict(&v.permutation)
                        )
                        .unwrap();
                    }
                    s
                }
            };
            done(out, if ok { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Parameter names each family takes, in argument order.
fn parameter_names(family: Family) -> &'static [&'static str] {
    match family {
        Family::Array(ArrayFamily::G2) => &["phi", "rho"],
        Family::Cube(CubeFamily::G2x3) => &["phi", "rho", "psi"],
        Family::Cube(CubeFamily::W2W2G2) => &["phi", "psi"],
        _ => &["phi"],
    }
}

fn symbol(name: &str) -> &'static str {
    match name {
        "phi" => "φ",
        "rho" => "ρ",
        _ => "ψ",
    }
}

fn candidates(family: Family, name: &str, field: &FieldSpec) -> Vec<FieldElement> {
    match (family, name) {
        (Family::Array(ArrayFamily::G3), "phi") => field.g3_admissible(),
        (Family::Cube(CubeFamily::G3I | CubeFamily::G3II), "phi") => field.g3_cube_admissible(),
        _ => field.primitive_elements(),
    }
}

#[derive(Serialize)]
struct Parameter {
    name: &'static str,
    encoding: u32,
    polynomial: String,
    chosen_by_seed: bool,
}

#[derive(Serialize)]
struct ConstructedReport {
    family: String,
    field: String,
    parameters: Vec<Parameter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<u64>,
    order: usize,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    triples: Option<Vec<[usize; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    projections: Option<costas_core::ProjectionTriple>,
}

fn construct(
    fmt: Format,
    family: Family,
    field: &str,
    given: [&Option<String>; 3],
    shift: Option<u64>,
    seed: u64,
) -> CmdResult {
    let field = FieldSpec::parse(field)?;
    let names = parameter_names(family);
    let all = ["phi", "rho", "psi"];
    for (name, value) in all.iter().zip(given) {
        if value.is_some() && !names.contains(name) {
            return Err(CliError::Usage(format!("{family} does not take --{name}")));
        }
    }
    if shift.is_some() && family != Family::Array(ArrayFamily::W1) {
        return Err(CliError::Usage(format!("{family} does not take --c")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parameters = Vec::new();
    for &name in names {
        let idx = all.iter().position(|n| *n == name).expect("known name");
        let (element, chosen) = match given[idx] {
            Some(text) => (field.parse_element(text)?, false),
            None => {
                let pool = candidates(family, name, &field);
                let pick = pool.choose(&mut rng).copied().ok_or_else(|| {
                    CliError::Core(costas_core::Error::Inadmissible(format!(
                        "no admissible {} exists in GF({})",
                        symbol(name),
                        field.q()
                    )))
                })?;
                (pick, true)
            }
        };
        parameters.push(Parameter {
            name: symbol(name),
            encoding: element.encoding(),
            polynomial: field.format_element(element),
            chosen_by_seed: chosen,
        });
    }
    let id = ConstructionId {
        family,
        field: field.clone(),
        elements: parameters
            .iter()
            .map(|p| field.element(p.encoding as u64))
            .collect::<Result<_, _>>()?,
        shift: if family == Family::Array(ArrayFamily::W1) {
            Some(shift.unwrap_or(0))
        } else {
            None
        },
    };
    let built = id.build()?;
    let mut report = ConstructedReport {
        family: family.to_string(),
        field: field.to_string(),
        parameters,
        shift: id.shift,
        order: 0,
        verified: false,
        permutation: None,
        triples: None,
        projections: None,
    };
    let mut header = vec![format!(
        "{} over GF({}): {}",
        report.family,
        report.field,
        report
            .parameters
            .iter()
            .map(|p| {
                let seeded = if p.chosen_by_seed {
                    format!(" (seed {seed})")
                } else {
                    String::new()
                };
                format!("{} = {}{seeded}", p.name, p.polynomial)
            })
            .chain(id.shift.map(|c| format!("c = {c}")))
            .collect::<Vec<_>>()
            .join(", ")
    )];
    let body = match &built {
        Constructed::Array(p) => {
            report.order = p.order();
            report.verified = p.is_costas();
            report.permutation = Some(p.clone());
            header.push(format!("order {}, {}", p.order(), verdict(p)));
            write_arrays(&header, [p])
        }
        Constructed::Cube(cube) => {
            report.order = cube.order();
            report.verified = cube.is_costas_cube();
            report.triples = Some(cube.triples());
            let t = cube.projections();
            header.push(format!(
                "order {}, {}",
                cube.order(),
                if report.verified {
                    "costas cube"
                } else {
                    "not a costas cube"
                }
            ));
            header.push(format!("A {}", t.a));
            header.push(format!("B {}", t.b));
            header.push(format!("C {}", t.c));
            report.projections = Some(t);
            write_cube_text(&header, cube)
        }
    };
    let code = if report.verified { EXIT_OK } else { EXIT_FAIL };
    match fmt {
        Format::Machine => done(machine(&report), code),
        Format::Text => done(body, code),
    }
}

/// Reads a complete array list of one order, expanding representative-only
/// files to full dihedral orbits. Returns the arrays and any warnings.
fn ingest(path: &Path, order: Option<usize>) -> Result<(Vec<Permutation>, Vec<String>), CliError> {
    let file = load_arrays(path, true)?;
    let Some(found) = file.order() else {
        return Err(CliError::Invalid(format!(
            "{}: no arrays listed",
            path.display()
        )));
    };
    if let Some(expected) = order {
        if found != expected {
            return Err(CliError::Invalid(format!(
                "{}: arrays have order {found}, expected {expected}",
                path.display()
            )));
        }
    }
    if let Some((line, p)) = file.arrays.iter().find(|(_, p)| !p.is_costas()) {
        return Err(CliError::Invalid(format!(
            "{}: line {line}: {p} is {}",
            path.display(),
            verdict(p)
        )));
    }
    let mut warnings = Vec::new();
    let listed = file.permutations();
    let unique: BTreeSet<Permutation> = listed.iter().cloned().collect();
    if unique.len() != listed.len() {
        warnings.push(format!(
            "{} repeated arrays dropped",
            listed.len() - unique.len()
        ));
    }
    let unique: Vec<Permutation> = unique.into_iter().collect();
    let expanded = expand_orbits(&unique);
    if expanded.len() != unique.len() {
        warnings.push(format!(
            "the list is not closed under the 8 square symmetries; expanded {} arrays to {} by adding whole orbits",
            unique.len(),
            expanded.len()
        ));
    }
    validate_array_set(&expanded, found)?;
    Ok((expanded, warnings))
}

#[derive(Serialize)]
struct EnumerateReport {
    order: usize,
    source: String,
    cube_classes: usize,
    projection_array_classes: usize,
    total_array_classes: usize,
    published: Option<(usize, usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<Vec<[usize; 3]>>>,
}

fn row_text(r: &ClassReport) -> String {
    format!(
        "order {}: {} cube classes, {} projection array classes, {} array classes",
        r.order, r.cube_classes, r.projection_array_classes, r.total_array_classes
    )
}

fn enumerate(
    fmt: Format,
    order: usize,
    arrays_file: Option<&Path>,
    emit: bool,
    join: Join,
) -> CmdResult {
    let mode = match join {
        Join::AllPairs => JoinMode::AllPairs,
        Join::ClassReduced => JoinMode::ClassReduced,
    };
    let (arrays, warnings, source) = match arrays_file {
        Some(path) => {
            let (a, w) = ingest(path, Some(order))?;
            (a, w, format!("file {}", path.display()))
        }
        None => (
            enumerate_costas_arrays(order)?,
            Vec::new(),
            "in-process".to_string(),
        ),
    };
    let report = class_report(order, &arrays, mode)?;
    let published = published::census(order);
    let matches = published.map(|p| {
        p == (
            report.cube_classes,
            report.projection_array_classes,
            report.total_array_classes,
        )
    });
    let stdout = match fmt {
        Format::Machine => machine(&EnumerateReport {
            order,
            source,
            cube_classes: report.cube_classes,
            projection_array_classes: report.projection_array_classes,
            total_array_classes: report.total_array_classes,
            published,
            representatives: emit.then(|| {
                report
                    .representatives
                    .iter()
                    .map(CostasCube::triples)
                    .collect()
            }),
        }),
        Format::Text => {
            let mut s = row_text(&report);
            match (published, matches) {
                (Some(p), Some(true)) => {
                    write!(s, " (matches published {}/{}/{})", p.0, p.1, p.2).unwrap()
                }
                (Some(p), _) => write!(s, " (published {}/{}/{} DIFFERS)", p.0, p.1, p.2).unwrap(),
                _ => {}
            }
            s.push('\n');
            if emit {
                for cube in &report.representatives {
                    writeln!(s, "{cube}").unwrap();
                }
            }
            s
        }
    };
    Ok(Output {
        stdout,
        stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        code: if matches == Some(false) {
            EXIT_FAIL
        } else {
            EXIT_OK
        },
    })
}

#[derive(Serialize)]
struct CensusRow {
    order: usize,
    cube_classes: usize,
    projection_array_classes: usize,
    total_array_classes: usize,
    source: &'static str,
    matches_published: Option<bool>,
}

#[derive(Serialize)]
struct ConstructionReportRow {
    order: usize,
    g2x3: usize,
    w2w2g2: usize,
    g3: usize,
    g3_i: usize,
    g3_ii: usize,
    constructed: usize,
    total: Option<usize>,
    total_source: &'static str,
    matches_published: Option<bool>,
}

fn dash(n: usize) -> String {
    if n == 0 {
        "—".into()
    } else {
        n.to_string()
    }
}

fn census_row(order: usize) -> Result<(ClassReport, &'static str), CliError> {
    let arrays = enumerate_costas_arrays(order)?;
    Ok((
        class_report(order, &arrays, JoinMode::AllPairs)?,
        "computed",
    ))
}

fn tables(fmt: Format, table: u8, max_order: Option<usize>, census_limit: usize) -> CmdResult {
    match table {
        1 => {
            let max = max_order.unwrap_or(10);
            let top = published::CUBE_CENSUS.last().map_or(0, |r| r.0);
            if max > top {
                return Err(CliError::Usage(format!("table 1 lists orders up to {top}")));
            }
            let mut rows = Vec::new();
            for order in 2..=max {
                let published = published::census(order);
                let row = if order <= census_limit.min(DEFAULT_ENUMERATION_LIMIT) {
                    let (r, source) = census_row(order)?;
                    CensusRow {
                        order,
                        cube_classes: r.cube_classes,
                        projection_array_classes: r.projection_array_classes,
                        total_array_classes: r.total_array_classes,
                        source,
                        matches_published: published.map(|p| {
                            p == (
                                r.cube_classes,
                                r.projection_array_classes,
                                r.total_array_classes,
                            )
                        }),
                    }
                } else {
                    let p = published.expect("listed order");
                    CensusRow {
                        order,
                        cube_classes: p.0,
                        projection_array_classes: p.1,
                        total_array_classes: p.2,
                        source: "published",
                        matches_published: None,
                    }
                };
                rows.push(row);
            }
            let code = if rows.iter().any(|r| r.matches_published == Some(false)) {
                EXIT_FAIL
            } else {
                EXIT_OK
            };
            let out = match fmt {
                Format::Machine => machine(&serde_json::json!({ "table": 1, "rows": rows })),
                Format::Text => {
                    let mut s = format!(
                        "{:>5} {:>6} {:>11} {:>7}  {}\n",
                        "order", "cubes", "projections", "arrays", "source"
                    );
                    for r in &rows {
                        let check = match r.matches_published {
                            Some(true) => ", matches published",
                            Some(false) => ", DIFFERS from published",
                            None => "",
                        };
                        writeln!(
                            s,
                            "{:>5} {:>6} {:>11} {:>7}  {}{check}",
                            r.order,
                            r.cube_classes,
                            r.projection_array_classes,
                            r.total_array_classes,
                            r.source
                        )
                        .unwrap();
                    }
                    s
                }
            };
            done(out, code)
        }
        2 => {
            let max = max_order.unwrap_or(DEFAULT_MAX_SWEEP_ORDER);
            let census_limit = census_limit.min(DEFAULT_ENUMERATION_LIMIT);
            let rows = construction_table(max, &FieldCatalog::default())?;
            let mut out_rows = Vec::new();
            for r in rows {
                let (total, total_source) = if r.order <= census_limit {
                    (Some(census_row(r.order)?.0.cube_classes), "computed")
                } else {
                    match published::census(r.order) {
                        Some(p) => (Some(p.0), "published"),
                        None => (None, "unknown"),
                    }
                };
                let listed = published::CONSTRUCTED_CLASSES
                    .iter()
                    .find(|p| p.0 == r.order);
                let matches = listed
                    .map(|p| *p == (r.order, r.g2x3, r.w2w2g2, r.g3))
                    .or(Some(false));
                let total_ok = match (total_source, total, published::census(r.order)) {
                    ("computed", Some(t), Some(p)) => t == p.0,
                    _ => true,
                };
                out_rows.push(ConstructionReportRow {
                    order: r.order,
                    g2x3: r.g2x3,
                    w2w2g2: r.w2w2g2,
                    g3: r.g3,
                    g3_i: r.g3_i,
                    g3_ii: r.g3_ii,
                    constructed: r.constructed,
                    total,
                    total_source,
                    matches_published: matches.map(|m| m && total_ok),
                });
            }
            let code = if out_rows.iter().any(|r| r.matches_published == Some(false)) {
                EXIT_FAIL
            } else {
                EXIT_OK
            };
            let out = match fmt {
                Format::Machine => machine(&serde_json::json!({ "table": 2, "rows": out_rows })),
                Format::Text => {
                    let mut s = format!(
                        "{:>5} {:>6} {:>7} {:>4} {:>6} {:>12}  {}\n",
                        "order", "G2x3", "W2W2G2", "G3", "total", "constructed", "total source"
                    );
                    for r in &out_rows {
                        writeln!(
                            s,
                            "{:>5} {:>6} {:>7} {:>4} {:>6} {:>12}  {}{}",
                            r.order,
                            dash(r.g2x3),
                            dash(r.w2w2g2),
                            dash(r.g3),
                            r.total.map_or("?".into(), |t| t.to_string()),
                            r.constructed,
                            r.total_source,
                            if r.matches_published == Some(false) {
                                ", DIFFERS from published"
                            } else {
                                ""
                            }
                        )
                        .unwrap();
                    }
                    s
                }
            };
            done(out, code)
        }
        other => Err(CliError::Usage(format!(
            "--table must be 1 or 2, got {other}"
        ))),
    }
}

#[derive(Serialize)]
struct ClassGroup {
    canonical: Permutation,
    members: Vec<Permutation>,
}

fn sd_set(fmt: Format, path: &Path) -> CmdResult {
    let cube = load_cube(path)?;
    if !cube.is_costas_cube() {
        return Ok(Output {
            stderr: format!("error: {}: not a costas cube\n", path.display()),
            code: EXIT_FAIL,
            ..Output::default()
        });
    }
    let set = projection_set(&cube)?;
    let size = set.len();
    let degenerate = cube.order() == 1;
    let groups: Vec<ClassGroup> = group_by_class(set)
        .into_iter()
        .map(|(canonical, members)| ClassGroup { canonical, members })
        .collect();
    let out = match fmt {
        Format::Machine => machine(&serde_json::json!({
            "order": cube.order(),
            "size": size,
            "degenerate": degenerate,
            "classes": groups,
        })),
        Format::Text => {
            let mut s = format!("|S(D)| = {size} in {} class(es)", groups.len());
            if degenerate {
                s.push_str(" (degenerate: order 1)");
            }
            s.push('\n');
            for g in &groups {
                let members: Vec<String> = g.members.iter().map(Permutation::to_string).collect();
                writeln!(s, "class {}: {}", g.canonical, members.join(" ")).unwrap();
            }
            s
        }
    };
    done(out, EXIT_OK)
}

/// Construction labels by canonical form, built once per order.
struct Labeller {
    catalogs: BTreeMap<usize, BTreeMap<Permutation, BTreeSet<ArrayFamily>>>,
    fields: FieldCatalog,
}

impl Labeller {
    fn new() -> Self {
        Labeller {
            catalogs: BTreeMap::new(),
            fields: FieldCatalog::default(),
        }
    }

    fn labels(&mut self, p: &Permutation) -> Result<Vec<String>, CliError> {
        let n = p.order();
        if !(2..=DEFAULT_MAX_SWEEP_ORDER).contains(&n) {
            return Ok(Vec::new());
        }
        if !self.catalogs.contains_key(&n) {
            let built = catalog(n, &self.fields)?;
            self.catalogs.insert(n, built);
        }
        Ok(self.catalogs[&n]
            .get(&canonical_array(p))
            .map(|set| set.iter().map(ArrayFamily::to_string).collect())
            .unwrap_or_default())
    }
}

fn label_text(labels: &[String]) -> String {
    if labels.is_empty() {
        "none".into()
    } else {
        labels.join(",")
    }
}

#[derive(Serialize)]
struct ArrayClass {
    line: usize,
    permutation: Permutation,
    costas: bool,
    canonical: Permutation,
    class_size: usize,
    diagonal_symmetry: bool,
    constructions: Vec<String>,
}

#[derive(Serialize)]
struct ProjectionClass {
    name: &'static str,
    permutation: Permutation,
    canonical: Permutation,
    constructions: Vec<String>,
}

fn classify(fmt: Format, target: Target, path: &Path) -> CmdResult {
    let mut labeller = Labeller::new();
    match target {
        Target::Array => {
            let file = load_arrays(path, false)?;
            let mut items = Vec::new();
            for (line, p) in &file.arrays {
                let costas = p.is_costas();
                items.push(ArrayClass {
                    line: *line,
                    permutation: p.clone(),
                    costas,
                    canonical: canonical_array(p),
                    class_size: array_class_size(p),
                    diagonal_symmetry: has_diagonal_symmetry(p),
                    constructions: if costas {
                        labeller.labels(p)?
                    } else {
                        Vec::new()
                    },
                });
            }
            let out = match fmt {
                Format::Machine => {
                    machine(&serde_json::json!({ "target": "array", "items": items }))
                }
                Format::Text => {
                    let mut s = String::new();
                    for it in &items {
                        if !it.costas {
                            writeln!(
                                s,
                                "line {}  {}  {}",
                                it.line,
                                it.permutation,
                                verdict(&it.permutation)
                            )
                            .unwrap();
                            continue;
                        }
                        writeln!(
                            s,
                            "line {}  {}  canonical {}  class size {}{}  constructions {}",
                            it.line,
                            it.permutation,
                            it.canonical,
                            it.class_size,
                            if it.diagonal_symmetry {
                                " (diagonal symmetry)"
                            } else {
                                ""
                            },
                            label_text(&it.constructions)
                        )
                        .unwrap();
                    }
                    s
                }
            };
            let code = if items.iter().all(|i| i.costas) {
                EXIT_OK
            } else {
                EXIT_FAIL
            };
            done(out, code)
        }
        Target::Cube => {
            let cube = load_cube(path)?;
            if !cube.is_costas_cube() {
                return Ok(Output {
                    stderr: format!("error: {}: not a costas cube\n", path.display()),
                    code: EXIT_FAIL,
                    ..Output::default()
                });
            }
            let canonical = canonical_cube(&cube);
            let sd = projection_set(&cube)?.len();
            let t = cube.projections();
            let mut projections = Vec::new();
            for (name, p) in [("A", t.a), ("B", t.b), ("C", t.c)] {
                projections.push(ProjectionClass {
                    name,
                    canonical: canonical_array(&p),
                    constructions: labeller.labels(&p)?,
                    permutation: p,
                });
            }
            let mut families = Vec::new();
            if cube.order() <= DEFAULT_MAX_SWEEP_ORDER {
                for family in CubeFamily::ALL {
                    if family_classes(family, cube.order(), &labeller.fields)?.contains(&canonical)
                    {
                        families.push(family.to_string());
                    }
                }
            }
            let out = match fmt {
                Format::Machine => machine(&serde_json::json!({
                    "target": "cube",
                    "order": cube.order(),
                    "canonical": cube_json(&canonical),
                    "sd_size": sd,
                    "cube_constructions": families,
                    "projections": projections,
                })),
                Format::Text => {
                    let mut s = format!(
                        "cube of order {}\ncanonical {canonical}\n|S(D)| = {sd}\n",
                        cube.order()
                    );
                    writeln!(s, "cube constructions {}", label_text(&families)).unwrap();
                    for p in &projections {
                        writeln!(
                            s,
                            "{} {}  canonical {}  constructions {}",
                            p.name,
                            p.permutation,
                            p.canonical,
                            label_text(&p.constructions)
                        )
                        .unwrap();
                    }
                    s
                }
            };
            done(out, EXIT_OK)
        }
    }
}

fn project(fmt: Format, path: &Path, from_pair: Option<Pair>) -> CmdResult {
    match from_pair {
        None => {
            let cube = load_cube(path)?;
            let t = cube.projections();
            let out = match fmt {
                Format::Machine => machine(&t),
                Format::Text => {
                    let mut s = String::new();
                    for (name, p) in [("A", &t.a), ("B", &t.b), ("C", &t.c)] {
                        s.push_str(&write_arrays(&[format!("projection {name}")], [p]));
                    }
                    s
                }
            };
            done(out, EXIT_OK)
        }
        Some(pair) => {
            let file = load_arrays(path, true)?;
            let [(_, x), (_, y)] = &file.arrays[..] else {
                return Err(CliError::Invalid(format!(
                    "{}: expected exactly two arrays, found {}",
                    path.display(),
                    file.arrays.len()
                )));
            };
            let (which, names) = match pair {
                Pair::Ab => (ProjectionPair::AB, "A and B"),
                Pair::Ac => (ProjectionPair::AC, "A and C"),
                Pair::Bc => (ProjectionPair::BC, "B and C"),
            };
            let cube = cube_from_pair(which, x, y)?;
            let out = match fmt {
                Format::Machine => machine(&cube_json(&cube)),
                Format::Text => {
                    write_cube_text(&[format!("cube with projections {names} as given")], &cube)
                }
            };
            done(out, EXIT_OK)
        }
    }
}

#[derive(Serialize)]
struct ImportSummary {
    order: usize,
    arrays: usize,
    classes: usize,
    class_sizes: BTreeMap<usize, usize>,
    output: PathBuf,
    warnings: Vec<String>,
}

fn import(
    fmt: Format,
    path: &Path,
    expect_order: Option<usize>,
    output: Option<&Path>,
) -> CmdResult {
    let (arrays, warnings) = ingest(path, expect_order)?;
    let order = arrays[0].order();
    let classes = classes_of(&arrays);
    let mut class_sizes = BTreeMap::new();
    for c in &classes {
        *class_sizes.entry(array_class_size(c)).or_insert(0) += 1;
    }
    let target = output.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut s = path.as_os_str().to_owned();
        s.push(".normalized");
        PathBuf::from(s)
    });
    let header = [
        format!(
            "Costas arrays of order {order}: {} arrays in {} classes",
            arrays.len(),
            classes.len()
        ),
        format!("normalized from {}", path.display()),
    ];
    write_file(&target, &write_arrays(&header, &arrays))?;
    let summary = ImportSummary {
        order,
        arrays: arrays.len(),
        classes: classes.len(),
        class_sizes,
        output: target,
        warnings,
    };
    let stdout = match fmt {
        Format::Machine => machine(&summary),
        Format::Text => {
            let sizes: Vec<String> = summary
                .class_sizes
                .iter()
                .map(|(size, count)| format!("{count} of size {size}"))
                .collect();
            format!(
                "order {}: {} arrays in {} classes ({}); wrote {}\n",
                summary.order,
                summary.arrays,
                summary.classes,
                sizes.join(", "),
                summary.output.display()
            )
        }
    };
    Ok(Output {
        stdout,
        stderr: summary
            .warnings
            .iter()
            .map(|w| format!("warning: {w}\n"))
            .collect(),
        code: EXIT_OK,
    })
}
