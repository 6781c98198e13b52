//! JSON files for groups, modules and forms. Field elements are lowercase
//! hex of their coefficient bits in the polynomial basis.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use symvert::forms::GForm;
use symvert::{Field, GroupTable, Matrix, ModuleRep};

use crate::{CliError, Result};

/// Permutation generators (1-based image lists) or a multiplication table (0-based ids, identity 0).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Permutations { points: usize, generators: Vec<Vec<usize>> },
    Table { order: usize, table: Vec<Vec<u32>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub field_degree: u32,
    pub dim: usize,
    /// one row-major list of hex entries per group generator
    pub matrices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormFile {
    pub gram: Vec<String>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

pub fn group_from_file(g: &GroupFile) -> Result<GroupTable> {
    match g {
        GroupFile::Permutations { points, generators } => {
            let mut gens = Vec::with_capacity(generators.len());
            for img in generators {
                if img.len() != *points || img.iter().any(|&x| x == 0 || x > *points) {
                    return Err(CliError::Parse(format!("generator is not a 1-based image list on {points} points")));
                }
                gens.push(img.iter().map(|&x| x - 1).collect());
            }
            Ok(GroupTable::from_permutations(*points, &gens)?)
        }
        GroupFile::Table { order, table } => {
            if table.len() != *order {
                return Err(CliError::Parse(format!("table has {} rows for order {order}", table.len())));
            }
            Ok(GroupTable::from_table(table.clone())?)
        }
    }
}

pub fn parse_group(text: &str) -> Result<GroupTable> {
    group_from_file(&parse_json(text, "group file")?)
}

pub fn parse_matrix(f: &Field, rows: usize, cols: usize, entries: &[String]) -> Result<Matrix> {
    if entries.len() != rows * cols {
        return Err(CliError::Parse(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
    }
    let data = entries.iter().map(|s| f.from_hex(s)).collect::<symvert::Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(f, rows, cols, data))
}

pub fn matrix_hex(m: &Matrix) -> Vec<String> {
    m.data.iter().map(|&x| m.field().to_hex(x)).collect()
}

/// A kG-module from its file; `field_degree` embeds it in a larger field.
pub fn parse_module(group: Arc<GroupTable>, text: &str, field_degree: Option<u32>) -> Result<ModuleRep> {
    let file: ModuleFile = parse_json(text, "module file")?;
    module_from_file(group, &file, field_degree)
}

pub fn module_from_file(group: Arc<GroupTable>, file: &ModuleFile, field_degree: Option<u32>) -> Result<ModuleRep> {
    let f = Field::new(file.field_degree)?;
    if file.matrices.len() != group.gens().len() {
        return Err(CliError::Parse(format!("{} matrices for {} generators", file.matrices.len(), group.gens().len())));
    }
    let mats = file
        .matrices
        .iter()
        .map(|m| parse_matrix(&f, file.dim, file.dim, m))
        .collect::<Result<Vec<_>>>()?;
    let whole = Arc::new(group.whole());
    let m = ModuleRep::new(group, whole, f, mats)?;
    match field_degree {
        Some(d) if d != file.field_degree => {
            let big = Field::new(d)?;
            Ok(m.extend_field(&big)?)
        }
        _ => Ok(m),
    }
}

pub fn module_to_file(m: &ModuleRep) -> ModuleFile {
    ModuleFile {
        field_degree: m.field().degree(),
        dim: m.dim(),
        matrices: m.gen_matrices().iter().map(matrix_hex).collect(),
    }
}

/// A form on `m`, checked for shape and invariance.
pub fn parse_form(m: &ModuleRep, text: &str) -> Result<GForm> {
    let file: FormFile = parse_json(text, "form file")?;
    let gram = parse_matrix(m.field(), m.dim(), m.dim(), &file.gram)?;
    Ok(GForm::new(m.clone(), gram)?)
}

pub fn form_to_file(b: &GForm) -> FormFile {
    FormFile { gram: matrix_hex(b.gram()) }
}
