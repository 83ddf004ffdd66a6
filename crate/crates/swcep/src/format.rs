//! JSON spec, codes and pack files.
//!
//! Element encodings are the integer indices of the core constructors:
//! matrices row-major in base `q` with the first entry most significant,
//! residues for `Z/n`, and mixed radix with the leftmost factor most
//! significant for products and direct sums.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use swcep_core::code::{Code, CodeMap};
use swcep_core::lab::Bounds;
use swcep_core::module::{Module, ModuleSpec};
use swcep_core::ring::{Ring, RingSpec};
use swcep_core::Guards;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDesc {
    Matrix { m: usize, q: u64 },
    ModN { n: u32 },
    Product { factors: Vec<RingDesc> },
    Table { add: Vec<Vec<u32>>, mul: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDesc {
    Column { k: usize },
    Regular,
    ModM { m: u32 },
    DirectSum { parts: Vec<ModuleDesc> },
    Table { add: Vec<Vec<u32>>, act: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_gens: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub ring: RingDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsDesc>,
}

impl RingDesc {
    pub fn to_spec(&self) -> RingSpec {
        match self {
            RingDesc::Matrix { m, q } => RingSpec::Matrix { m: *m, q: *q },
            RingDesc::ModN { n } => RingSpec::ModN(*n),
            RingDesc::Product { factors } => RingSpec::Product(factors.iter().map(RingDesc::to_spec).collect()),
            RingDesc::Table { add, mul } => RingSpec::Table {
                add: add.clone(),
                mul: mul.clone(),
            },
        }
    }
}

impl ModuleDesc {
    pub fn to_spec(&self) -> ModuleSpec {
        match self {
            ModuleDesc::Column { k } => ModuleSpec::Column { k: *k },
            ModuleDesc::Regular => ModuleSpec::Regular,
            ModuleDesc::ModM { m } => ModuleSpec::ModM(*m),
            ModuleDesc::DirectSum { parts } => ModuleSpec::DirectSum(parts.iter().map(ModuleDesc::to_spec).collect()),
            ModuleDesc::Table { add, act } => ModuleSpec::Table {
                add: add.clone(),
                act: act.clone(),
            },
        }
    }
}

/// A spec file with its ring and module built.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub spec: SpecFile,
    pub ring: Arc<Ring>,
    pub module: Option<Arc<Module>>,
}

impl Loaded {
    pub fn module(&self) -> Result<&Arc<Module>, CliError> {
        self.module
            .as_ref()
            .ok_or_else(|| CliError::Semantic("this command needs a \"module\" entry".into()))
    }

    /// Spec bounds over the defaults; command-line values take precedence.
    pub fn bounds(&self, max_n: Option<usize>, max_gens: Option<usize>) -> Bounds {
        let d = Bounds::default();
        let s = self.spec.bounds.unwrap_or_default();
        Bounds {
            max_n: max_n.or(s.max_n).unwrap_or(d.max_n),
            max_gens: max_gens.or(s.max_gens).unwrap_or(d.max_gens),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Builds the ring and (optional) module, reporting incompatible kinds as
/// semantic errors.
pub fn build(spec: SpecFile, guards: &Guards) -> Result<Loaded, CliError> {
    let ring = Arc::new(Ring::make(&spec.ring.to_spec(), guards).map_err(CliError::from_build)?);
    let module = match &spec.module {
        Some(m) => Some(Arc::new(
            Module::make(ring.clone(), &m.to_spec(), guards).map_err(CliError::from_build)?,
        )),
        None => None,
    };
    Ok(Loaded { spec, ring, module })
}

pub fn parse_spec(path: &Path, guards: &Guards) -> Result<Loaded, CliError> {
    let text = read(path)?;
    build(parse_json(path, &text)?, guards)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDesc {
    pub name: String,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDesc {
    pub from: String,
    pub to: String,
    pub gen_images: Vec<Vec<u32>>,
}

/// Codes over one alphabet and maps between them. Packs are codes files
/// with `C_plus`, `C_minus`, one map and the verification transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodesFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub alphabet: SpecFile,
    pub length: usize,
    pub codes: Vec<CodeDesc>,
    #[serde(default)]
    pub maps: Vec<MapDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<serde_json::Value>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// A codes file with its codes and maps built.
#[derive(Debug, Clone)]
pub struct LoadedCodes {
    pub file: CodesFile,
    pub alphabet: Loaded,
    pub codes: Vec<(String, Arc<Code>)>,
    pub maps: Vec<(MapDesc, CodeMap)>,
}

pub fn parse_codes(path: &Path, guards: &Guards) -> Result<LoadedCodes, CliError> {
    let text = read(path)?;
    load_codes(parse_json(path, &text)?, guards)
}

pub fn load_codes(file: CodesFile, guards: &Guards) -> Result<LoadedCodes, CliError> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(CliError::Semantic(format!(
            "unsupported schema version {}",
            file.schema_version
        )));
    }
    let alphabet = build(file.alphabet.clone(), guards)?;
    let module = alphabet.module()?.clone();
    let mut codes: Vec<(String, Arc<Code>)> = Vec::new();
    for c in &file.codes {
        if codes.iter().any(|(n, _)| *n == c.name) {
            return Err(CliError::Semantic(format!("duplicate code name {:?}", c.name)));
        }
        let code = Code::generate(&module, file.length, &c.generators, guards).map_err(CliError::from_build)?;
        codes.push((c.name.clone(), Arc::new(code)));
    }
    let find = |name: &str| {
        codes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| CliError::Semantic(format!("unknown code {name:?}")))
    };
    let mut maps = Vec::new();
    for m in &file.maps {
        let f = CodeMap::new(find(&m.from)?, find(&m.to)?, m.gen_images.clone()).map_err(CliError::from_build)?;
        maps.push((m.clone(), f));
    }
    Ok(LoadedCodes {
        file,
        alphabet,
        codes,
        maps,
    })
}
