//! Command-line front end.
//!
//! Every command reads one JSON document and writes one JSON document.
//! Documents carry `version` (always 1), the ground set as `space`, a
//! `kind` tag and whichever payload fields the command needs:
//!
//! ```json
//! {
//!   "version": 1,
//!   "space": ["a", "b"],
//!   "kind": "bundle",
//!   "capacity": { "mode": "completion",
//!                 "values": [ { "set": ["a"], "value": "3/10" },
//!                             { "set": ["b"], "value": "0.6" } ] },
//!   "observable": ["4/5", "1/2"]
//! }
//! ```
//!
//! Values are parsed as `p/q` or short decimals and always rendered as
//! reduced fractions. Exit codes: 0 success, 1 semantic or validation
//! failure (a report is still printed), 2 parse or schema failure.

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::capacity::{BuildMode, Capacity};
use crate::error::Error;
use crate::functional::{reconstruct, TableFunctional};
use crate::hyperspace::{GeneratedHyperHyperspace, InclusionHyperspace};
use crate::integrals::{choquet, fuzzy, sugeno, Pseudomultiplication};
use crate::laws::{run_suite, LawConfig, Suite};
use crate::monad::{check_morphism, Capacity2};
use crate::report::Report;
use crate::space::{GroundSet, Observable, SpaceMap, Subset, UnitValue};
use crate::subgraph::{self, SectionFamily, Subgraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

const VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "capkit",
    version,
    about = "Exact capacities, fuzzy integrals and monad laws on finite spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a capacity, hyperspace, subgraph, section family or level-2 capacity.
    Validate,
    /// Integrate an observable against a capacity.
    Integrate {
        #[arg(long, value_enum)]
        kind: IntegralKind,
        #[arg(long, value_enum, default_value = "min")]
        odot: OdotKind,
    },
    /// Push a capacity (or level-2 capacity) forward along a map.
    Pushforward,
    /// Smallest subset carrying the capacity.
    Support,
    /// Unit of a monad at a point.
    Unit {
        #[arg(long, value_enum)]
        monad: MonadKind,
        #[arg(long)]
        point: String,
    },
    /// Multiplication of a monad.
    Mu {
        #[arg(long, value_enum)]
        monad: MonadKind,
        /// Also check the hyperspace-to-capacity morphism squares (monad g only).
        #[arg(long)]
        check_morphism: bool,
    },
    /// Canonicalize a hyperspace; evaluate m_lower/m_upper or map it when given.
    Hyperspace,
    /// Embed a hyperspace as a 0/1 capacity.
    Embed,
    /// α-sections of a capacity.
    Sections,
    /// Subgraph level table of a capacity.
    Subgraph,
    /// Rebuild a capacity from a subgraph, a section family or a functional table.
    Reconstruct,
    /// Run a law-checking suite.
    Laws {
        #[arg(long, value_enum)]
        suite: SuiteKind,
        #[arg(long, default_value_t = LawConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = LawConfig::default().samples)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IntegralKind {
    Sugeno,
    Choquet,
    Fuzzy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OdotKind {
    Min,
    Product,
    Probsum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MonadKind {
    M,
    G,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteKind {
    MonadM,
    MonadG,
    Morphism,
    Integrals,
}

impl From<SuiteKind> for Suite {
    fn from(s: SuiteKind) -> Suite {
        match s {
            SuiteKind::MonadM => Suite::MonadM,
            SuiteKind::MonadG => Suite::MonadG,
            SuiteKind::Morphism => Suite::Morphism,
            SuiteKind::Integrals => Suite::Integrals,
        }
    }
}

/// A set-valued table entry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub set: Vec<String>,
    pub value: UnitValue,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CapacityDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub values: Vec<Entry>,
}

/// Index capacity sets name support positions as strings: `["0", "1"]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Capacity2Doc {
    pub support: Vec<CapacityDoc>,
    pub index: CapacityDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub codomain: Vec<String>,
    /// Image of each point of `space`, in order.
    pub image: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SectionDoc {
    pub threshold: UnitValue,
    pub sets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FunctionalEntry {
    pub observable: Vec<UnitValue>,
    pub value: UnitValue,
}

type HyperspaceDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    pub space: Vec<String>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<CapacityDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<Vec<UnitValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperspace: Option<HyperspaceDoc>,
    /// Generators, each a list of hyperspaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyper_hyperspace: Option<Vec<Vec<HyperspaceDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity2: Option<Capacity2Doc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<UnitValue>>,
    /// Subgraph level table, one entry per subset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgraph: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sections: Option<Vec<SectionDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functional: Option<Vec<FunctionalEntry>>,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<UnitValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_lower: Option<UnitValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_upper: Option<UnitValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Failure of a command, tagged with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub document: Box<Document>,
}

impl Failure {
    fn parse(space: &[String], message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            document: Box::new(Document {
                version: VERSION,
                space: space.to_vec(),
                kind: "error".into(),
                error: Some(message.into()),
                ..Document::default()
            }),
        }
    }

    fn from_error(ground: &GroundSet, err: Error) -> Self {
        let space = ground.names().to_vec();
        let code = exit_code(&err);
        let report = match &err {
            Error::NotACapacity(r)
            | Error::AxiomsViolated(r)
            | Error::NotASubgraph(r)
            | Error::NotAntitone(r) => Some(report_json(ground, r)),
            _ => None,
        };
        Failure {
            code,
            document: Box::new(Document {
                version: VERSION,
                space,
                kind: if report.is_some() { "report" } else { "error" }.into(),
                valid: report.as_ref().map(|_| false),
                report,
                error: Some(err.to_string()),
                ..Document::default()
            }),
        }
    }
}

/// Exit code for a library error: schema problems are 2, everything the
/// input could have gotten semantically wrong is 1.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Malformed(_)
        | Error::OutOfRange(_)
        | Error::ZeroDenominator
        | Error::EmptyGroundSet
        | Error::TooLarge { .. }
        | Error::EmptyName
        | Error::DuplicateName(_)
        | Error::UnknownElement(_)
        | Error::SubsetOutOfRange { .. }
        | Error::ArityMismatch { .. }
        | Error::ImageOutOfRange { .. }
        | Error::GroundMismatch { .. }
        | Error::EmptyFamily
        | Error::EmptySupport => EXIT_PARSE,
        _ => EXIT_SEMANTIC,
    }
}

/// Serializes a report, adding `<field>_set` name lists next to every
/// subset mask field.
fn report_json(ground: &GroundSet, report: &Report) -> Value {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if let Some(list) = value.get_mut("violations").and_then(Value::as_array_mut) {
        for v in list {
            let Some(obj) = v.as_object_mut() else {
                continue;
            };
            for key in ["smaller", "larger", "first", "second", "subset"] {
                if let Some(mask) = obj.get(key).and_then(Value::as_u64) {
                    let names = ground.names_of(Subset(mask as u32));
                    obj.insert(format!("{key}_set"), json!(names));
                }
            }
        }
    }
    value
}

struct Ctx {
    ground: GroundSet,
    doc: Document,
}

type CmdResult = Result<(Document, i32), Failure>;

impl Ctx {
    fn fail(&self, err: Error) -> Failure {
        Failure::from_error(&self.ground, err)
    }

    fn missing(&self, field: &str) -> Failure {
        Failure::parse(self.ground.names(), format!("missing field `{field}`"))
    }

    fn output(&self, kind: &str) -> Document {
        output_doc(&self.ground, kind)
    }

    fn subset(&self, names: &[String]) -> Result<Subset, Failure> {
        self.ground.subset_of_names(names).map_err(|e| self.fail(e))
    }

    fn capacity(&self) -> Result<Capacity, Failure> {
        let doc = self
            .doc
            .capacity
            .as_ref()
            .ok_or_else(|| self.missing("capacity"))?;
        parse_capacity(&self.ground, doc).map_err(|e| self.fail(e))
    }

    fn observable(&self) -> Result<Observable, Failure> {
        let values = self
            .doc
            .observable
            .clone()
            .ok_or_else(|| self.missing("observable"))?;
        Observable::new(self.ground.clone(), values).map_err(|e| self.fail(e))
    }

    fn hyperspace(&self) -> Result<InclusionHyperspace, Failure> {
        let sets = self
            .doc
            .hyperspace
            .as_ref()
            .ok_or_else(|| self.missing("hyperspace"))?;
        parse_hyperspace(&self.ground, sets).map_err(|e| self.fail(e))
    }

    fn hyper_hyperspace(&self) -> Result<GeneratedHyperHyperspace, Failure> {
        let gens = self
            .doc
            .hyper_hyperspace
            .as_ref()
            .ok_or_else(|| self.missing("hyper_hyperspace"))?;
        let parsed = gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|h| parse_hyperspace(&self.ground, h))
                    .collect()
            })
            .collect::<crate::Result<Vec<Vec<_>>>>()
            .map_err(|e| self.fail(e))?;
        GeneratedHyperHyperspace::new(&self.ground, parsed).map_err(|e| self.fail(e))
    }

    fn capacity2(&self) -> Result<Capacity2, Failure> {
        let doc = self
            .doc
            .capacity2
            .as_ref()
            .ok_or_else(|| self.missing("capacity2"))?;
        let support = doc
            .support
            .iter()
            .map(|c| parse_capacity(&self.ground, c))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(|e| self.fail(e))?;
        let index_ground = GroundSet::indices(support.len()).map_err(|e| self.fail(e))?;
        let index = parse_capacity(&index_ground, &doc.index).map_err(|e| self.fail(e))?;
        Capacity2::new(&self.ground, support, index).map_err(|e| self.fail(e))
    }

    fn map(&self) -> Result<SpaceMap, Failure> {
        let doc = self.doc.map.as_ref().ok_or_else(|| self.missing("map"))?;
        let codomain = GroundSet::new(doc.codomain.clone()).map_err(|e| self.fail(e))?;
        let image = doc
            .image
            .iter()
            .map(|n| codomain.index_of(n))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(|e| self.fail(e))?;
        SpaceMap::new(self.ground.clone(), codomain, image).map_err(|e| self.fail(e))
    }
}

fn output_doc(ground: &GroundSet, kind: &str) -> Document {
    Document {
        version: VERSION,
        space: ground.names().to_vec(),
        kind: kind.into(),
        ..Document::default()
    }
}

fn parse_capacity(ground: &GroundSet, doc: &CapacityDoc) -> crate::Result<Capacity> {
    let mode = match doc.mode.as_deref() {
        None | Some("exact") => BuildMode::Exact,
        Some("completion") | Some("monotone-completion") => BuildMode::MonotoneCompletion,
        Some(other) => return Err(Error::Malformed(format!("capacity mode `{other}`"))),
    };
    let assignments = doc
        .values
        .iter()
        .map(|e| Ok((ground.subset_of_names(&e.set)?, e.value.clone())))
        .collect::<crate::Result<Vec<_>>>()?;
    Capacity::build(ground.clone(), &assignments, mode)
}

fn parse_hyperspace(
    ground: &GroundSet,
    sets: &[Vec<String>],
) -> crate::Result<InclusionHyperspace> {
    let subsets = sets
        .iter()
        .map(|s| ground.subset_of_names(s))
        .collect::<crate::Result<Vec<_>>>()?;
    InclusionHyperspace::up_closure(ground, &subsets)
}

/// Full table in mask order.
pub fn capacity_doc(c: &Capacity) -> CapacityDoc {
    CapacityDoc {
        mode: Some("exact".into()),
        values: table_entries(c.ground(), c.table()),
    }
}

fn table_entries(ground: &GroundSet, table: &[UnitValue]) -> Vec<Entry> {
    ground
        .subsets()
        .map(|s| Entry {
            set: ground.names_of(s),
            value: table[s.0 as usize].clone(),
        })
        .collect()
}

fn hyperspace_doc(h: &InclusionHyperspace) -> HyperspaceDoc {
    h.minimal()
        .iter()
        .map(|&k| h.ground().names_of(k))
        .collect()
}

fn capacity2_doc(c: &Capacity2) -> Capacity2Doc {
    Capacity2Doc {
        support: c.support().iter().map(capacity_doc).collect(),
        index: capacity_doc(c.index_capacity()),
    }
}

fn capacity_output(c: &Capacity) -> Document {
    Document {
        capacity: Some(capacity_doc(c)),
        ..output_doc(c.ground(), "capacity")
    }
}

fn hyperspace_output(h: &InclusionHyperspace) -> Document {
    Document {
        hyperspace: Some(hyperspace_doc(h)),
        ..output_doc(h.ground(), "hyperspace")
    }
}

fn validate(ctx: &Ctx) -> CmdResult {
    let mut out = ctx.output("report");
    if ctx.doc.capacity.is_some() {
        ctx.capacity()?;
    } else if ctx.doc.subgraph.is_some() {
        subgraph::from_subgraph(&parse_subgraph(ctx)?).map_err(|e| ctx.fail(e))?;
    } else if ctx.doc.sections.is_some() {
        let family = parse_sections(ctx)?;
        let report = family.check_antitone();
        if !report.passed() {
            return Err(ctx.fail(Error::NotAntitone(report)));
        }
    } else if ctx.doc.capacity2.is_some() {
        ctx.capacity2()?;
    } else if ctx.doc.hyper_hyperspace.is_some() {
        ctx.hyper_hyperspace()?;
    } else if ctx.doc.hyperspace.is_some() {
        ctx.hyperspace()?;
    } else {
        return Err(ctx.missing("capacity"));
    }
    out.valid = Some(true);
    Ok((out, EXIT_OK))
}

fn parse_subgraph(ctx: &Ctx) -> Result<Subgraph, Failure> {
    let entries = ctx
        .doc
        .subgraph
        .as_ref()
        .ok_or_else(|| ctx.missing("subgraph"))?;
    let mut levels: Vec<Option<UnitValue>> = vec![None; ctx.ground.powerset_len()];
    for e in entries {
        let s = ctx.subset(&e.set)?;
        if levels[s.0 as usize].replace(e.value.clone()).is_some() {
            return Err(ctx.fail(Error::DuplicateAssignment(s.0)));
        }
    }
    let levels = levels
        .into_iter()
        .enumerate()
        .map(|(m, v)| v.ok_or(Error::MissingAssignment(m as u32)))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| ctx.fail(e))?;
    Subgraph::from_levels(ctx.ground.clone(), levels).map_err(|e| ctx.fail(e))
}

fn parse_sections(ctx: &Ctx) -> Result<SectionFamily, Failure> {
    let docs = ctx
        .doc
        .sections
        .as_ref()
        .ok_or_else(|| ctx.missing("sections"))?;
    let parts = docs
        .iter()
        .map(|s| Ok((s.threshold.clone(), parse_hyperspace(&ctx.ground, &s.sets)?)))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| ctx.fail(e))?;
    SectionFamily::from_parts(&ctx.ground, parts).map_err(|e| ctx.fail(e))
}

fn integrate(ctx: &Ctx, kind: IntegralKind, odot: OdotKind) -> CmdResult {
    let c = ctx.capacity()?;
    let phi = ctx.observable()?;
    let mut out = ctx.output("value");
    let value = match kind {
        IntegralKind::Sugeno => sugeno(&c, &phi),
        IntegralKind::Choquet => choquet(&c, &phi),
        IntegralKind::Fuzzy => {
            let op = match odot {
                OdotKind::Min => Pseudomultiplication::Min,
                OdotKind::Product => Pseudomultiplication::Product,
                OdotKind::Probsum => Pseudomultiplication::ProbabilisticSum,
            };
            if !op.uniform_vanishing() {
                out.notes = Some(vec![format!(
                    "pseudomultiplication `{}` does not vanish uniformly as its second argument tends to 0; \
                     the integral is not continuous in the capacity",
                    op.name()
                )]);
            }
            fuzzy(&c, &phi, &op)
        }
    }
    .map_err(|e| ctx.fail(e))?;
    out.value = Some(value);
    Ok((out, EXIT_OK))
}

fn pushforward(ctx: &Ctx) -> CmdResult {
    let f = ctx.map()?;
    if ctx.doc.capacity2.is_some() {
        let c = ctx.capacity2()?.pushforward(&f).map_err(|e| ctx.fail(e))?;
        let out = Document {
            capacity2: Some(capacity2_doc(&c)),
            ..output_doc(f.codomain(), "capacity2")
        };
        return Ok((out, EXIT_OK));
    }
    let c = ctx.capacity()?.pushforward(&f).map_err(|e| ctx.fail(e))?;
    Ok((capacity_output(&c), EXIT_OK))
}

fn support(ctx: &Ctx) -> CmdResult {
    let c = ctx.capacity()?;
    let mut out = ctx.output("subset");
    out.subset = Some(ctx.ground.names_of(c.support()));
    Ok((out, EXIT_OK))
}

fn unit(ctx: &Ctx, monad: MonadKind, point: &str) -> CmdResult {
    match monad {
        MonadKind::M => {
            let c = Capacity::dirac(&ctx.ground, point).map_err(|e| ctx.fail(e))?;
            Ok((capacity_output(&c), EXIT_OK))
        }
        MonadKind::G => {
            let h = InclusionHyperspace::eta(&ctx.ground, point).map_err(|e| ctx.fail(e))?;
            Ok((hyperspace_output(&h), EXIT_OK))
        }
    }
}

fn mu(ctx: &Ctx, monad: MonadKind, morphism: bool) -> CmdResult {
    match monad {
        MonadKind::M => Ok((capacity_output(&ctx.capacity2()?.mu()), EXIT_OK)),
        MonadKind::G => {
            let big = ctx.hyper_hyperspace()?;
            let mut out = hyperspace_output(&big.mu());
            let mut code = EXIT_OK;
            if morphism {
                let report = check_morphism(&big).map_err(|e| ctx.fail(e))?;
                out.valid = Some(report.passed());
                if !report.passed() {
                    code = EXIT_SEMANTIC;
                }
                out.report = Some(report_json(&ctx.ground, &report));
            }
            Ok((out, code))
        }
    }
}

fn hyperspace(ctx: &Ctx) -> CmdResult {
    let h = ctx.hyperspace()?;
    if ctx.doc.map.is_some() {
        let f = ctx.map()?;
        return Ok((
            hyperspace_output(&h.map(&f).map_err(|e| ctx.fail(e))?),
            EXIT_OK,
        ));
    }
    let mut out = hyperspace_output(&h);
    if ctx.doc.observable.is_some() {
        let phi = ctx.observable()?;
        out.m_lower = Some(h.m_lower(&phi).map_err(|e| ctx.fail(e))?);
        out.m_upper = Some(h.m_upper(&phi).map_err(|e| ctx.fail(e))?);
    }
    Ok((out, EXIT_OK))
}

fn sections(ctx: &Ctx) -> CmdResult {
    let c = ctx.capacity()?;
    let family = match &ctx.doc.thresholds {
        Some(ts) => subgraph::sections(&c, ts).map_err(|e| ctx.fail(e))?,
        None => subgraph::value_sections(&c),
    };
    let mut out = ctx.output("sections");
    out.sections = Some(
        family
            .thresholds()
            .iter()
            .zip(family.sections())
            .map(|(t, h)| SectionDoc {
                threshold: t.clone(),
                sets: hyperspace_doc(h),
            })
            .collect(),
    );
    Ok((out, EXIT_OK))
}

fn to_subgraph(ctx: &Ctx) -> CmdResult {
    let s = subgraph::to_subgraph(&ctx.capacity()?);
    let mut out = ctx.output("subgraph");
    out.subgraph = Some(table_entries(&ctx.ground, s.levels()));
    Ok((out, EXIT_OK))
}

fn reconstruct_cmd(ctx: &Ctx) -> CmdResult {
    let c = if ctx.doc.subgraph.is_some() {
        subgraph::from_subgraph(&parse_subgraph(ctx)?)
    } else if ctx.doc.sections.is_some() {
        subgraph::reconstruct_from_sections(&parse_sections(ctx)?)
    } else if let Some(entries) = &ctx.doc.functional {
        let parsed = entries
            .iter()
            .map(|e| {
                Ok((
                    Observable::new(ctx.ground.clone(), e.observable.clone())?,
                    e.value.clone(),
                ))
            })
            .collect::<crate::Result<Vec<_>>>()
            .map_err(|e| ctx.fail(e))?;
        TableFunctional::new(&ctx.ground, parsed).and_then(|t| reconstruct(&t))
    } else {
        return Err(ctx.missing("subgraph"));
    }
    .map_err(|e| ctx.fail(e))?;
    Ok((capacity_output(&c), EXIT_OK))
}

fn laws(suite: SuiteKind, seed: u64, samples: usize) -> (Document, i32) {
    let report = run_suite(suite.into(), &LawConfig { seed, samples });
    let passed = report.passed();
    let out = Document {
        version: VERSION,
        kind: "laws".into(),
        valid: Some(passed),
        report: Some(serde_json::to_value(&report).expect("reports serialize")),
        ..Document::default()
    };
    (out, if passed { EXIT_OK } else { EXIT_SEMANTIC })
}

fn parse_document(input: &str) -> Result<(GroundSet, Document), Failure> {
    let doc: Document = serde_json::from_str(input)
        .map_err(|e| Failure::parse(&[], format!("invalid document: {e}")))?;
    if doc.version != VERSION {
        return Err(Failure::parse(
            &doc.space,
            format!("unsupported version {}", doc.version),
        ));
    }
    let ground =
        GroundSet::new(doc.space.clone()).map_err(|e| Failure::parse(&doc.space, e.to_string()))?;
    Ok((ground, doc))
}

/// Renders a document as pretty JSON with a trailing newline.
pub fn render(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Runs `args` (including the program name) against `input`, returning
/// the rendered output document and the exit code.
pub fn run<I, S>(args: I, input: &str) -> (String, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (e.to_string(), EXIT_OK),
                _ => (
                    render(&Failure::parse(&[], e.to_string()).document),
                    EXIT_PARSE,
                ),
            };
        }
    };
    let (doc, code) = match execute(&cli.command, input) {
        Ok(done) => done,
        Err(f) => (*f.document, f.code),
    };
    (render(&doc), code)
}

pub fn execute(command: &Command, input: &str) -> CmdResult {
    if let Command::Laws {
        suite,
        seed,
        samples,
    } = command
    {
        return Ok(laws(*suite, *seed, *samples));
    }
    let (ground, doc) = parse_document(input)?;
    let ctx = Ctx { ground, doc };
    match command {
        Command::Validate => validate(&ctx),
        Command::Integrate { kind, odot } => integrate(&ctx, *kind, *odot),
        Command::Pushforward => pushforward(&ctx),
        Command::Support => support(&ctx),
        Command::Unit { monad, point } => unit(&ctx, *monad, point),
        Command::Mu {
            monad,
            check_morphism,
        } => mu(&ctx, *monad, *check_morphism),
        Command::Hyperspace => hyperspace(&ctx),
        Command::Embed => Ok((
            capacity_output(&ctx.hyperspace()?.embed_capacity()),
            EXIT_OK,
        )),
        Command::Sections => sections(&ctx),
        Command::Subgraph => to_subgraph(&ctx),
        Command::Reconstruct => reconstruct_cmd(&ctx),
        Command::Laws { .. } => unreachable!("handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C0_PHI0: &str = r#"{
        "version": 1, "space": ["a", "b"], "kind": "bundle",
        "capacity": {"mode": "completion", "values": [
            {"set": ["a"], "value": "3/10"}, {"set": ["b"], "value": "0.6"}]},
        "observable": ["4/5", "1/2"]
    }"#;

    fn value_of(out: &str) -> String {
        let v: Value = serde_json::from_str(out).unwrap();
        v["value"].as_str().unwrap().to_string()
    }

    #[test]
    fn integrate_goldens() {
        let (out, code) = run(["capkit", "integrate", "--kind", "sugeno"], C0_PHI0);
        assert_eq!((value_of(&out).as_str(), code), ("1/2", 0));
        let (out, _) = run(["capkit", "integrate", "--kind", "choquet"], C0_PHI0);
        assert_eq!(value_of(&out), "59/100");
        let (out, _) = run(
            [
                "capkit",
                "integrate",
                "--kind",
                "fuzzy",
                "--odot",
                "product",
            ],
            C0_PHI0,
        );
        assert_eq!(value_of(&out), "1/2");
        let (out, _) = run(
            [
                "capkit",
                "integrate",
                "--kind",
                "fuzzy",
                "--odot",
                "probsum",
            ],
            C0_PHI0,
        );
        assert!(out.contains("notes"));
    }

    #[test]
    fn parse_failures_exit_2() {
        let (_, code) = run(["capkit", "integrate", "--kind", "sugeno"], "not json");
        assert_eq!(code, EXIT_PARSE);
        let (_, code) = run(["capkit", "bogus"], "{}");
        assert_eq!(code, EXIT_PARSE);
        let bad_value = C0_PHI0.replace("3/10", "7/5");
        assert_eq!(
            run(["capkit", "integrate", "--kind", "sugeno"], &bad_value).1,
            EXIT_PARSE
        );
        let bad_name = C0_PHI0.replace(r#"["a"]"#, r#"["z"]"#);
        assert_eq!(run(["capkit", "support"], &bad_name).1, EXIT_PARSE);
        let bad_version = C0_PHI0.replace(r#""version": 1"#, r#""version": 2"#);
        assert_eq!(run(["capkit", "support"], &bad_version).1, EXIT_PARSE);
        let no_obs = r#"{"version": 1, "space": ["a"], "kind": "capacity",
            "capacity": {"values": [{"set": [], "value": "0"}, {"set": ["a"], "value": "1"}]}}"#;
        assert_eq!(
            run(["capkit", "integrate", "--kind", "sugeno"], no_obs).1,
            EXIT_PARSE
        );
    }

    #[test]
    fn validate_reports_monotonicity_witness() {
        let doc = r#"{"version": 1, "space": ["a", "b"], "kind": "capacity",
            "capacity": {"mode": "exact", "values": [
                {"set": [], "value": "0"}, {"set": ["a"], "value": "1/2"},
                {"set": ["b"], "value": "0"}, {"set": ["a", "b"], "value": "1/4"}]}}"#;
        let (out, code) = run(["capkit", "validate"], doc);
        assert_eq!(code, EXIT_SEMANTIC);
        let v: Value = serde_json::from_str(&out).unwrap();
        let violations = v["report"]["violations"].as_array().unwrap();
        assert!(violations.iter().any(|x| x["violation"] == "not-monotone"
            && x["smaller_set"] == json!(["a"])
            && x["larger_set"] == json!(["a", "b"])));
    }

    #[test]
    fn laws_command_passes() {
        let (out, code) = run(
            ["capkit", "laws", "--suite", "monad-g", "--samples", "20"],
            "",
        );
        assert_eq!(code, EXIT_OK, "{out}");
    }
}
