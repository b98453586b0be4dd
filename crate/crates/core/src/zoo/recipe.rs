//! Group recipes (`"SL(2,3)"`, `"A5 x A5"`, `"S3 wr S2"`, `"M12"`, a generator file path) and the named-group registry.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::families::{alternating, cyclic, dihedral, symmetric, wreath};
use super::matrix::{classical_order, matrix_group, Family, PermutationModule};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::perm::{direct_product, GeneratorFile, Group, Permutation};

/// Environment variable overriding the data directory.
pub const DATA_DIR_VAR: &str = "SUBNORM_DATA_DIR";

/// The directory holding `registry.json`, `matrices/` and `groups/`.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    /// A classical group; `projective` divides out the scalars.
    Classical { family: Family, n: usize, q: u64, projective: bool },
    Named(String),
    File(PathBuf),
    Product(Box<Recipe>, Box<Recipe>),
    Wreath(Box<Recipe>, Box<Recipe>),
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |r: &Recipe| match r {
            Recipe::Product(..) | Recipe::Wreath(..) => format!("({r})"),
            _ => r.to_string(),
        };
        match self {
            Recipe::Symmetric(n) => write!(f, "S{n}"),
            Recipe::Alternating(n) => write!(f, "A{n}"),
            Recipe::Cyclic(n) => write!(f, "C{n}"),
            Recipe::Dihedral(n) => write!(f, "D{n}"),
            Recipe::Classical { family: Family::Sz, q, .. } => write!(f, "Sz({q})"),
            Recipe::Classical { family, n, q, projective } => {
                write!(f, "{}{family}({n},{q})", if *projective { "P" } else { "" })
            }
            Recipe::Named(name) => f.write_str(name),
            Recipe::File(path) => write!(f, "{}", path.display()),
            Recipe::Product(a, b) => match **a {
                Recipe::Product(..) => write!(f, "{a} x {}", wrap(b)),
                _ => write!(f, "{} x {}", wrap(a), wrap(b)),
            },
            Recipe::Wreath(a, b) => write!(f, "{} wr {}", wrap(a), wrap(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Word(String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Token>| {
        if !word.is_empty() {
            out.push(Token::Word(std::mem::take(word)));
        }
    };
    for c in text.chars() {
        match c {
            '(' | ')' | ',' => {
                flush(&mut word, &mut out);
                out.push(match c {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => Token::Comma,
                });
            }
            '×' => {
                flush(&mut word, &mut out);
                out.push(Token::Word("x".into()));
            }
            c if c.is_whitespace() => flush(&mut word, &mut out),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut out);
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(format!("recipe: {}", msg.into()))
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            other => Err(bad(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Token::Word(x)) if x == w)
    }

    fn expr(&mut self) -> Result<Recipe> {
        let mut left = self.wreath()?;
        while self.is_word("x") {
            self.pos += 1;
            left = Recipe::Product(Box::new(left), Box::new(self.wreath()?));
        }
        Ok(left)
    }

    fn wreath(&mut self) -> Result<Recipe> {
        let mut left = self.atom()?;
        while self.is_word("wr") {
            self.pos += 1;
            left = Recipe::Wreath(Box::new(left), Box::new(self.atom()?));
        }
        Ok(left)
    }

    fn integer(&mut self) -> Result<u64> {
        match self.next() {
            Some(Token::Word(w)) => w.parse().map_err(|_| bad(format!("{w} is not an integer"))),
            other => Err(bad(format!("expected an integer, found {other:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Recipe> {
        match self.next() {
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect(Token::Close)?;
                Ok(inner)
            }
            Some(Token::Word(w)) => {
                if self.peek() == Some(&Token::Open) {
                    self.pos += 1;
                    let first = self.integer()?;
                    let args = if self.peek() == Some(&Token::Comma) {
                        self.pos += 1;
                        (first, Some(self.integer()?))
                    } else {
                        (first, None)
                    };
                    self.expect(Token::Close)?;
                    return classical_atom(&w, args);
                }
                simple_atom(&w)
            }
            other => Err(bad(format!("unexpected {other:?}"))),
        }
    }
}

fn classical_atom(word: &str, args: (u64, Option<u64>)) -> Result<Recipe> {
    let (projective, stem) = match word.strip_prefix('P') {
        Some(rest) if !rest.is_empty() => (true, rest),
        _ => (false, word),
    };
    let family = match stem {
        "SL" => Family::SL,
        "GL" => Family::GL,
        "SU" => Family::SU,
        "Sp" => Family::Sp,
        "SO" => Family::SO,
        "SO+" => Family::SOplus,
        "SO-" => Family::SOminus,
        "Sz" => Family::Sz,
        _ => return Err(bad(format!("unknown family {word}"))),
    };
    let (n, q) = match (family, args) {
        (Family::Sz, (q, None)) => (4, q),
        (Family::Sz, _) => return Err(bad("Sz takes a single argument q")),
        (_, (n, Some(q))) => (n as usize, q),
        _ => return Err(bad(format!("{word} takes two arguments (n, q)"))),
    };
    if projective && matches!(family, Family::GL | Family::Sz) {
        return Err(bad(format!("{word} is not supported")));
    }
    classical_order(family, n, q)?;
    Ok(Recipe::Classical { family, n, q, projective })
}

fn simple_atom(word: &str) -> Result<Recipe> {
    let numbered = |prefix: char| -> Option<usize> {
        let rest = word.strip_prefix(prefix)?;
        if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok()
    };
    if let Some(n) = numbered('S') {
        return Ok(Recipe::Symmetric(n));
    }
    if let Some(n) = numbered('A') {
        return Ok(Recipe::Alternating(n));
    }
    if let Some(n) = numbered('C') {
        return Ok(Recipe::Cyclic(n));
    }
    if let Some(n) = numbered('D') {
        return Ok(Recipe::Dihedral(n));
    }
    if word.ends_with(".json") {
        return Ok(Recipe::File(PathBuf::from(word)));
    }
    if word.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Ok(Recipe::Named(word.to_string()));
    }
    Err(bad(format!("cannot read {word}")))
}

/// A constructed group, with its permutation module when it comes from matrices.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub recipe: Recipe,
    pub group: Group,
    pub module: Option<PermutationModule>,
}

impl BuiltGroup {
    /// A named element of the underlying matrix group file, as a permutation.
    pub fn named_element(&self, label: &str) -> Result<Permutation> {
        match &self.module {
            Some(m) => m.named_element(label),
            None => Err(Error::InvalidInput(format!("{} carries no named elements", self.recipe))),
        }
    }
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Recipe> {
        let mut parser = Parser { tokens: tokenize(text), pos: 0 };
        if parser.tokens.is_empty() {
            return Err(bad("empty"));
        }
        let recipe = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(bad(format!("trailing input after {recipe}")));
        }
        Ok(recipe)
    }

    /// The order predicted by closed-form formulas and registry entries, if known before construction.
    pub fn expected_order(&self) -> Result<Option<u128>> {
        let factorial = |n: usize| (1..=n as u128).product::<u128>();
        Ok(match self {
            Recipe::Symmetric(n) => Some(factorial(*n)),
            Recipe::Alternating(n) => Some((factorial(*n) / 2).max(1)),
            Recipe::Cyclic(n) | Recipe::Dihedral(n) => Some(*n as u128),
            Recipe::Classical { family, n, q, projective } => {
                let order = classical_order(*family, *n, *q)?;
                if *projective {
                    let scalars = matrix_group(*family, *n, *q, &data_dir())?.scalar_count();
                    Some(order / scalars)
                } else {
                    Some(order)
                }
            }
            Recipe::Named(name) => Some(registry_entry(name)?.expected_order),
            Recipe::File(_) => None,
            Recipe::Product(a, b) => match (a.expected_order()?, b.expected_order()?) {
                (Some(x), Some(y)) => Some(x * y),
                _ => None,
            },
            Recipe::Wreath(a, b) => match (a.expected_order()?, b.build_group(&RunConfig::default())) {
                (Some(x), Ok(top)) => Some(x.pow(top.degree() as u32) * top.order()),
                _ => None,
            },
        })
    }

    /// Constructs the group and checks its order against [`Recipe::expected_order`].
    pub fn build(&self, config: &RunConfig) -> Result<BuiltGroup> {
        let (group, module) = match self {
            Recipe::Classical { family, n, q, projective } => {
                let matrices = matrix_group(*family, *n, *q, &data_dir())?;
                let projective = *projective || matrices.scalar_count() == 1;
                let module = matrices.to_permutation(projective)?;
                (module.group().clone(), Some(module))
            }
            Recipe::Named(name) => return load_named_built(name, config),
            _ => (self.build_group(config)?, None),
        };
        if let Some(expected) = self.expected_order()? {
            if group.order() != expected {
                return Err(Error::Verification(format!("{self} has order {} but {expected} was expected", group.order())));
            }
        }
        Ok(BuiltGroup { recipe: self.clone(), group, module })
    }

    fn build_group(&self, config: &RunConfig) -> Result<Group> {
        match self {
            Recipe::Symmetric(n) => symmetric(*n),
            Recipe::Alternating(n) => alternating(*n),
            Recipe::Cyclic(n) => cyclic(*n),
            Recipe::Dihedral(n) => dihedral(*n),
            Recipe::Classical { .. } => Ok(self.build(config)?.group),
            Recipe::Named(name) => load_named(name, config),
            Recipe::File(path) => GeneratorFile::load(path)?.build(),
            Recipe::Product(a, b) => direct_product(&a.build_group(config)?, &b.build_group(config)?),
            Recipe::Wreath(a, b) => wreath(&a.build_group(config)?, &b.build_group(config)?),
        }
    }
}

/// Parses and builds a recipe.
pub fn construct(text: &str, config: &RunConfig) -> Result<BuiltGroup> {
    Recipe::parse(text)?.build(config)
}

#[derive(Clone, Debug, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    #[serde(default)]
    pub file: Option<String>,
    #[serde(default)]
    pub recipe: Option<String>,
    pub expected_order: u128,
    #[serde(default)]
    pub sha256: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct RegistryDoc {
    version: u32,
    groups: Vec<RegistryEntry>,
}

/// Entries of the named-group registry in the data directory.
pub fn registry() -> Result<Vec<RegistryEntry>> {
    let path = data_dir().join("registry.json");
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc: RegistryDoc = serde_json::from_str(&text)?;
    if doc.version != 1 {
        return Err(Error::InvalidInput(format!("unsupported registry version {}", doc.version)));
    }
    Ok(doc.groups)
}

fn registry_entry(name: &str) -> Result<RegistryEntry> {
    registry()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("{name} is not in the group registry")))
}

/// Hex SHA-256 of a file's bytes.
pub fn file_sha256(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(format!("{:x}", Sha256::digest(bytes)))
}

/// A registry group, checked against its pinned file hash and expected order.
pub fn load_named(name: &str, config: &RunConfig) -> Result<Group> {
    Ok(load_named_built(name, config)?.group)
}

/// A registry group, with its matrix module when its recipe is classical.
pub fn load_named_built(name: &str, config: &RunConfig) -> Result<BuiltGroup> {
    let entry = registry_entry(name)?;
    let built = match (&entry.file, &entry.recipe) {
        (Some(file), _) => {
            let path = data_dir().join(file);
            if let Some(pinned) = &entry.sha256 {
                let actual = file_sha256(&path)?;
                if &actual != pinned {
                    return Err(Error::Verification(format!("{name}: file hash {actual} differs from the pinned {pinned}")));
                }
            }
            let group = GeneratorFile::load(&path)?.build()?;
            BuiltGroup { recipe: Recipe::Named(name.to_string()), group, module: None }
        }
        (None, Some(text)) => {
            let recipe = Recipe::parse(text)?;
            if recipe == Recipe::Named(name.to_string()) {
                return Err(Error::InvalidInput(format!("{name} refers to itself")));
            }
            BuiltGroup { recipe: Recipe::Named(name.to_string()), ..recipe.build(config)? }
        }
        (None, None) => return Err(Error::InvalidInput(format!("{name} has neither a file nor a recipe"))),
    };
    if built.group.order() != entry.expected_order {
        return Err(Error::Verification(format!(
            "{name} has order {} but the registry expects {}",
            built.group.order(),
            entry.expected_order
        )));
    }
    Ok(built)
}
