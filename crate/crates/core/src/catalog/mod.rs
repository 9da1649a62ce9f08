//! Bundled records: every graded algebra of dimension at most four that carries a
//! superbialgebra structure, the structures themselves and the Hopf records.
//!
//! The comultiplications are transcribed on generator labels in `tables.txt` and
//! expanded to structure constants on the even-then-odd basis at load time.

mod build;
pub(crate) mod expr;
pub(crate) mod models;

pub(crate) use build::{Clauses, FamilyCtx};
pub(crate) use models::{FamilySpec, Model};

use crate::axioms::check_all;
use crate::constructions::{variant, VariantKind};
use crate::error::{Error, Result};
use crate::structures::{deserialize, serialize, Document, SuperBialgebraData};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

const TABLES: &str = include_str!("tables.txt");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    Algebra,
    Superalgebra,
    Superbialgebra,
    Hopf,
}

impl Tier {
    pub fn is_bialgebra(self) -> bool {
        matches!(self, Tier::Superbialgebra | Tier::Hopf)
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub data: SuperBialgebraData,
    /// Family, entry number and the labels used to transcribe it.
    pub provenance: String,
    pub tier: Tier,
    /// Id of the underlying superalgebra record (the entry itself for algebras).
    pub family: String,
}

impl CatalogEntry {
    pub fn id(&self) -> &str {
        &self.data.id
    }

    pub fn dim(&self) -> usize {
        self.data.space.dim()
    }
}

/// A declared identity `id = variant(source, kind)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossRef {
    pub id: String,
    pub kind: VariantKind,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub family: String,
    pub dim: usize,
    pub superbialgebras: usize,
    pub hopf: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct IndexRow {
    id: String,
    tier: Tier,
    family: String,
    provenance: String,
    file: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct IndexFile {
    entries: Vec<IndexRow>,
    aliases: BTreeMap<String, String>,
    cross_refs: Vec<CrossRef>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
    aliases: BTreeMap<String, String>,
    cross_refs: Vec<CrossRef>,
}

/// Short names for the Hopf records.
pub const ALIASES: [(&str, &str); 6] = [
    ("H1", "A_{3|2}^2"),
    ("H2", "A_{11|2}^1"),
    ("H3", "A_{12|2}^1"),
    ("H4", "A_{3|2}^1"),
    ("H5", "A_{1|1}^2"),
    ("M2Graded", "A_{10|1}"),
];

// ---------------------------------------------------------------------------
// tables.txt

#[derive(Clone, Debug)]
enum Source {
    Direct(Clauses),
    Cop(String),
    Op { source: String, cop: bool },
}

#[derive(Clone, Debug)]
struct RawEntry {
    id: String,
    key: String,
    source: Source,
}

#[derive(Clone, Debug)]
struct RawFamily {
    id: String,
    eps: Vec<(String, expr::Expr)>,
    entries: Vec<RawEntry>,
}

fn parse_clause(text: &str, into: &mut Clauses) -> Result<()> {
    let (lhs, rhs) = text.split_once('=').ok_or_else(|| Error::Parse(format!("clause `{text}` has no `=`")))?;
    let words: Vec<&str> = lhs.split_whitespace().collect();
    let e = expr::parse(rhs.trim())?;
    match words.as_slice() {
        ["eps", g] => into.eps.push((g.to_string(), e)),
        ["S", g] => into.antipode.push((g.to_string(), e)),
        [g] => into.delta.push((g.to_string(), e)),
        _ => return Err(Error::Parse(format!("cannot read clause `{text}`"))),
    }
    Ok(())
}

fn parse_tables(src: &str) -> Result<Vec<RawFamily>> {
    let mut out: Vec<RawFamily> = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |m: String| Error::Parse(format!("tables line {}: {m}", n + 1));
        if let Some(id) = line.strip_prefix("family ") {
            out.push(RawFamily { id: id.trim().to_string(), eps: Vec::new(), entries: Vec::new() });
            continue;
        }
        let fam = out.last_mut().ok_or_else(|| at("entry before any family".into()))?;
        if line.starts_with("eps ") {
            let mut c = Clauses::default();
            for part in line.split(';') {
                parse_clause(part.trim(), &mut c).map_err(|e| at(e.to_string()))?;
            }
            fam.eps.extend(c.eps);
            continue;
        }
        let colon = line.find(':');
        let eq = line.find('=').ok_or_else(|| at("expected `:` or `=`".into()))?;
        let (key, source) = match colon {
            Some(c) if c < eq => {
                let mut clauses = Clauses::default();
                for part in line[c + 1..].split(';').map(str::trim).filter(|p| !p.is_empty()) {
                    parse_clause(part, &mut clauses).map_err(|e| at(e.to_string()))?;
                }
                (line[..c].trim(), Source::Direct(clauses))
            }
            _ => {
                let rhs: Vec<&str> = line[eq + 1..].split_whitespace().collect();
                let source = match rhs.as_slice() {
                    ["cop", j] => Source::Cop(format!("{}^{j}", fam.id)),
                    ["op", s] => Source::Op { source: s.to_string(), cop: false },
                    ["opcop", s] => Source::Op { source: s.to_string(), cop: true },
                    _ => return Err(at(format!("cannot read `{line}`"))),
                };
                (line[..eq].trim(), source)
            }
        };
        let id = if key.chars().all(|c| c.is_ascii_digit()) { format!("{}^{key}", fam.id) } else { key.to_string() };
        fam.entries.push(RawEntry { id, key: key.to_string(), source });
    }
    Ok(out)
}

struct Tables {
    families: Vec<RawFamily>,
    by_id: HashMap<String, (usize, usize)>,
}

impl Tables {
    fn new(src: &str) -> Result<Tables> {
        let families = parse_tables(src)?;
        let mut by_id = HashMap::new();
        for (f, fam) in families.iter().enumerate() {
            for (k, e) in fam.entries.iter().enumerate() {
                if by_id.insert(e.id.clone(), (f, k)).is_some() {
                    return Err(Error::Parse(format!("entry `{}` is listed twice", e.id)));
                }
            }
        }
        Ok(Tables { families, by_id })
    }

    fn entry(&self, id: &str) -> Result<(&RawFamily, &RawEntry)> {
        let &(f, k) = self.by_id.get(id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
        Ok((&self.families[f], &self.families[f].entries[k]))
    }

    /// Clauses with the family's default counit values filled in.
    fn resolve(&self, id: &str, depth: usize) -> Result<Clauses> {
        if depth > 4 {
            return Err(Error::Parse(format!("reference cycle through `{id}`")));
        }
        let (fam, e) = self.entry(id)?;
        Ok(match &e.source {
            Source::Direct(c) => {
                let mut c = c.clone();
                for (g, v) in &fam.eps {
                    if !c.eps.iter().any(|(h, _)| h == g) {
                        c.eps.push((g.clone(), v.clone()));
                    }
                }
                c
            }
            Source::Cop(j) => self.resolve(j, depth + 1)?.flip(),
            Source::Op { source, cop } => {
                let c = self.resolve(source, depth + 1)?;
                if *cop {
                    c.flip()
                } else {
                    c
                }
            }
        })
    }
}

fn describe_labels(spec: &FamilySpec) -> String {
    spec.labels.iter().map(|(n, e)| format!("{n} = {e}")).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------------------
// building

fn family_dim_prefix(id: &str) -> Option<&str> {
    id.strip_prefix("A3_")
}

impl Catalog {
    /// Expands the bundled tables without running the load-time checks.
    pub fn build_unchecked() -> Result<Catalog> {
        let tables = Tables::new(TABLES)?;
        let mut entries = Vec::new();
        let mut cross_refs = Vec::new();

        for (id, model, basis, description) in models::even_algebras() {
            let n = basis.len();
            let mult = model.graded_table(n, 0, &basis)?;
            entries.push(CatalogEntry {
                data: SuperBialgebraData::algebra(&id, mult),
                provenance: format!("even algebra {id}: {description}"),
                tier: Tier::Algebra,
                family: id.clone(),
            });
        }

        let specs = models::families();
        let mut ctxs: HashMap<String, FamilyCtx> = HashMap::new();
        for spec in &specs {
            let ctx = FamilyCtx::new(spec)?;
            let basis = spec.basis.join(", ");
            entries.push(CatalogEntry {
                data: ctx.algebra(&spec.id),
                provenance: format!("superalgebra {}: {}; graded basis {basis}", spec.id, spec.description),
                tier: Tier::Superalgebra,
                family: spec.id.clone(),
            });
            ctxs.insert(spec.id.clone(), ctx);
        }

        for fam in &tables.families {
            let ctx = ctxs.get(&fam.id).ok_or_else(|| Error::Parse(format!("no superalgebra `{}`", fam.id)))?;
            for e in &fam.entries {
                let clauses = tables.resolve(&e.id, 0)?;
                let data = ctx.realize(&e.id, &clauses)?;
                let tier = if data.antipode.is_some() { Tier::Hopf } else { Tier::Superbialgebra };
                let how = match &e.source {
                    Source::Direct(_) => format!("transcribed on labels {}", describe_labels(&ctx.spec)),
                    Source::Cop(j) => {
                        cross_refs.push(CrossRef { id: e.id.clone(), kind: VariantKind::Cop, source: j.clone() });
                        format!("coopposite of {j}")
                    }
                    Source::Op { source, cop } => {
                        let kind = if *cop { VariantKind::OpCop } else { VariantKind::Op };
                        cross_refs.push(CrossRef { id: e.id.clone(), kind, source: source.clone() });
                        let word = if *cop { "opposite coopposite" } else { "opposite" };
                        format!("{word} of {source}, same formulas on the corresponding basis")
                    }
                };
                entries.push(CatalogEntry {
                    data,
                    provenance: format!("{} structure {}: {how}", fam.id, e.key),
                    tier,
                    family: fam.id.clone(),
                });
            }
        }
        Catalog::assemble(entries, cross_refs)
    }

    fn assemble(entries: Vec<CatalogEntry>, cross_refs: Vec<CrossRef>) -> Result<Catalog> {
        let mut index = HashMap::new();
        for (k, e) in entries.iter().enumerate() {
            if index.insert(e.data.id.clone(), k).is_some() {
                return Err(Error::Validation(vec![format!("duplicate catalog id `{}`", e.data.id)]));
            }
        }
        let aliases = ALIASES.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Ok(Catalog { entries, index, aliases, cross_refs })
    }

    /// Expands and validates the bundled tables.
    pub fn build() -> Result<Catalog> {
        let c = Catalog::build_unchecked()?;
        let problems = c.validate();
        if problems.is_empty() {
            Ok(c)
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// Every failed load-time invariant, as messages.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            let id = e.id();
            out.extend(e.data.violations().into_iter().map(|m| format!("{id}: {m}")));
            if e.tier.is_bialgebra() != e.data.is_bialgebra_record() {
                out.push(format!("{id}: tier {} does not match the stored structure", e.tier));
            }
            if (e.tier == Tier::Hopf) != e.data.antipode.is_some() {
                out.push(format!("{id}: tier {} does not match the stored antipode", e.tier));
            }
            if e.tier.is_bialgebra() {
                match check_all(&e.data) {
                    Ok(reports) => {
                        for r in reports.iter().filter(|r| !r.holds) {
                            out.push(format!("{id}: {} fails on {} basis tuples", r.axiom, r.violations.len()));
                        }
                    }
                    Err(err) => out.push(format!("{id}: {err}")),
                }
            }
            if e.tier == Tier::Hopf {
                match crate::antipode::verify_properties(&e.data, None) {
                    Ok(v) if v.all_hold() => {}
                    Ok(v) => out.push(format!("{id}: stored antipode fails {}", v.failures().join(", "))),
                    Err(err) => out.push(format!("{id}: {err}")),
                }
            }
            if !self.index.contains_key(&e.family) {
                out.push(format!("{id}: unknown family `{}`", e.family));
            }
        }
        for (alias, target) in &self.aliases {
            if !self.index.contains_key(target) {
                out.push(format!("alias {alias} points to missing `{target}`"));
            }
        }
        for r in &self.cross_refs {
            if let Err(m) = self.check_cross_ref(r) {
                out.push(m);
            }
        }
        out
    }

    /// Checks `id = variant(source, kind)` as an equality of structure constants.
    pub fn check_cross_ref(&self, r: &CrossRef) -> std::result::Result<(), String> {
        let (a, b) = match (self.get(&r.id), self.get(&r.source)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(format!("{}: cross reference to missing `{}`", r.id, r.source)),
        };
        let v = variant(&b.data, r.kind).map_err(|e| format!("{}: {e}", r.id))?;
        if v.mult != a.data.mult || v.comult != a.data.comult || v.counit != a.data.counit {
            return Err(format!("{} differs from {:?} of {}", r.id, r.kind, r.source));
        }
        Ok(())
    }

    // -----------------------------------------------------------------------
    // queries

    /// Looks up an id, then an alias, then the dimension-3 form `A3_{..}` of `A_{..}`.
    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        if let Some(&k) = self.index.get(id) {
            return Ok(&self.entries[k]);
        }
        if let Some(target) = self.aliases.get(id) {
            return self.get(target);
        }
        if let Some(rest) = id.strip_prefix("A_") {
            if let Some(&k) = self.index.get(&format!("A3_{rest}")) {
                return Ok(&self.entries[k]);
            }
        }
        Err(Error::UnknownId(id.to_string()))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    pub fn cross_refs(&self) -> &[CrossRef] {
        &self.cross_refs
    }

    pub fn by_tier(&self, tier: Tier) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.tier == tier)
    }

    /// Superbialgebra and Hopf records.
    pub fn bialgebras(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.tier.is_bialgebra())
    }

    /// The superbialgebra records on one superalgebra, in listing order.
    pub fn members(&self, family: &str) -> Vec<&CatalogEntry> {
        let fam = self.get(family).map(|e| e.family.clone()).unwrap_or_else(|_| family.to_string());
        self.bialgebras().filter(|e| e.family == fam).collect()
    }

    /// One row per superalgebra; Hopf records count as superbialgebras too.
    pub fn counts(&self) -> Vec<CountRow> {
        self.by_tier(Tier::Superalgebra)
            .map(|f| {
                let members = self.members(f.id());
                CountRow {
                    family: family_dim_prefix(f.id()).map_or_else(|| f.id().to_string(), |r| format!("A_{r}")),
                    dim: f.dim(),
                    superbialgebras: members.len(),
                    hopf: members.iter().filter(|e| e.tier == Tier::Hopf).count(),
                }
            })
            .collect()
    }

    // -----------------------------------------------------------------------
    // files

    /// File name used for an id in an exported directory.
    pub fn file_name(id: &str) -> String {
        let mut s = String::new();
        for c in id.chars() {
            match c {
                '{' | '}' => {}
                '|' => s.push('-'),
                '^' | ';' => s.push('_'),
                '/' => s.push_str("over"),
                c => s.push(c),
            }
        }
        s + ".json"
    }

    /// Writes one document per entry and `index.json` into `dir`.
    pub fn export(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut rows = Vec::new();
        for e in &self.entries {
            let mut doc = serialize(&e.data);
            doc.provenance = Some(e.provenance.clone());
            let file = Catalog::file_name(e.id());
            std::fs::write(dir.join(&file), doc.to_json() + "\n")?;
            rows.push(IndexRow {
                id: e.id().to_string(),
                tier: e.tier,
                family: e.family.clone(),
                provenance: e.provenance.clone(),
                file,
            });
        }
        let index = IndexFile { entries: rows, aliases: self.aliases.clone(), cross_refs: self.cross_refs.clone() };
        std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(&index)? + "\n")?;
        Ok(())
    }

    /// Reads a directory written by [`Catalog::export`] and validates it.
    pub fn load_dir(dir: &Path) -> Result<Catalog> {
        let index: IndexFile = serde_json::from_str(&std::fs::read_to_string(dir.join("index.json"))?)?;
        let mut entries = Vec::new();
        for row in index.entries {
            let doc = Document::from_json(&std::fs::read_to_string(dir.join(&row.file))?)?;
            if doc.id != row.id {
                return Err(Error::Validation(vec![format!("{} holds `{}`, index says `{}`", row.file, doc.id, row.id)]));
            }
            let provenance = doc.provenance.clone().unwrap_or(row.provenance);
            entries.push(CatalogEntry { data: deserialize(&doc)?, provenance, tier: row.tier, family: row.family });
        }
        let mut c = Catalog::assemble(entries, index.cross_refs)?;
        c.aliases = index.aliases;
        let problems = c.validate();
        if problems.is_empty() {
            Ok(c)
        } else {
            Err(Error::Validation(problems))
        }
    }
}

static CATALOG: OnceLock<Catalog> = OnceLock::new();

/// The bundled catalog, built and validated on first use.
pub fn catalog() -> &'static Catalog {
    CATALOG.get_or_init(|| match Catalog::build() {
        Ok(c) => c,
        Err(e) => panic!("bundled catalog is inconsistent: {e}"),
    })
}

pub fn get(id: &str) -> Result<&'static CatalogEntry> {
    catalog().get(id)
}

pub fn counts() -> Vec<CountRow> {
    catalog().counts()
}
