//! External file formats. Algebras, homomorphisms and congruences travel as
//! JSON; all indices are 0-based and tables are flat row-major arrays.

use crate::algebra::{FiniteAlgebra, Homomorphism, Signature};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub symbol: String,
    pub arity: usize,
}

/// `{ "name": .., "size": .., "signature": [..], "tables": {symbol: [..]},
///    "zero": [..], "one": [..], "display": [..]? }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub size: usize,
    pub signature: Vec<SymbolEntry>,
    pub tables: BTreeMap<String, Vec<usize>>,
    pub zero: Vec<usize>,
    pub one: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(algebra: &FiniteAlgebra) -> AlgebraFile {
        AlgebraFile {
            name: algebra.name.clone(),
            size: algebra.size,
            signature: algebra
                .signature
                .symbols
                .iter()
                .map(|s| SymbolEntry {
                    symbol: s.name.clone(),
                    arity: s.arity,
                })
                .collect(),
            tables: algebra
                .signature
                .symbols
                .iter()
                .zip(&algebra.tables)
                .map(|(s, t)| (s.name.clone(), t.clone()))
                .collect(),
            zero: algebra.zero.clone(),
            one: algebra.one.clone(),
            display: algebra.display.clone(),
        }
    }

    pub fn into_algebra(self) -> Result<FiniteAlgebra> {
        let signature = Signature::new(
            self.signature
                .iter()
                .map(|s| (s.symbol.clone(), s.arity)),
        )?;
        let tables = self
            .signature
            .iter()
            .map(|s| {
                self.tables
                    .get(&s.symbol)
                    .cloned()
                    .ok_or_else(|| Error::MissingTable(s.symbol.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(
            self.name,
            self.size,
            signature,
            tables,
            self.zero,
            self.one,
            self.display,
        )
    }
}

/// `{ "dom": name-or-path, "cod": name-or-path, "map": [..] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomFile {
    pub dom: String,
    pub cod: String,
    pub map: Vec<usize>,
}

/// `{ "base": name, "rep": [..] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceFile {
    pub base: String,
    pub rep: Vec<usize>,
}

impl CongruenceFile {
    pub fn from_congruence(base: &FiniteAlgebra, theta: &Congruence) -> CongruenceFile {
        CongruenceFile {
            base: base.name.clone(),
            rep: theta.rep().to_vec(),
        }
    }
}

pub fn read_algebra(path: impl AsRef<Path>) -> Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path)?;
    let file: AlgebraFile = serde_json::from_str(&text)?;
    file.into_algebra()
}

pub fn write_algebra(path: impl AsRef<Path>, algebra: &FiniteAlgebra) -> Result<()> {
    let file = AlgebraFile::from_algebra(algebra);
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Reads a homomorphism file, resolving `dom`/`cod` first as paths relative
/// to the file itself (then to the working directory), and otherwise as
/// fixture specs such as `power-meet:2`.
pub fn read_homomorphism(path: impl AsRef<Path>) -> Result<Homomorphism> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let file: HomFile = serde_json::from_str(&text)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = |spec: &str| -> Result<FiniteAlgebra> {
        let sibling = dir.join(spec);
        if sibling.is_file() {
            return read_algebra(sibling);
        }
        if Path::new(spec).is_file() {
            return read_algebra(spec);
        }
        match fixtures::build_spec(spec)? {
            Fixture::Algebra(a) => Ok(a),
            Fixture::Homomorphism(_) => Err(Error::UnknownFixture(spec.to_string())),
        }
    };
    let dom = resolve(&file.dom)?;
    let cod = resolve(&file.cod)?;
    crate::algebra::validate_homomorphism(&dom, &cod, file.map)
}

pub fn write_homomorphism(path: impl AsRef<Path>, hom: &Homomorphism) -> Result<()> {
    let file = HomFile {
        dom: hom.dom.name.clone(),
        cod: hom.cod.name.clone(),
        map: hom.map.clone(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_files_round_trip() {
        let d = fixtures::m3_lattice().unwrap();
        let file = AlgebraFile::from_algebra(&d);
        let text = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        let rebuilt = back.into_algebra().unwrap();
        assert_eq!(rebuilt, d);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let mut file = AlgebraFile::from_algebra(&fixtures::chain_lattice(2).unwrap());
        file.tables.get_mut("meet").unwrap()[3] = 17;
        assert!(file.into_algebra().is_err());
    }
}
