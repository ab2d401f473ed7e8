//! Ambient polynomial rings and rational closed points.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::Result;

/// An ordered variable list over a coefficient field. Every polynomial holds
/// a shared handle to its ring; two rings are the same context when their
/// variable names and field agree.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    field: FieldSpec,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(field: FieldSpec, vars: Vec<String>) -> Result<Arc<Ring>> {
        let mut seen = Vec::new();
        for v in &vars {
            if v.is_empty() || seen.contains(&v) {
                return Err(Error::BadVariableList);
            }
            seen.push(v);
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    /// The ring on the same field with one variable removed (the base of the
    /// projection that drops `idx`).
    pub fn without_var(&self, idx: usize) -> Result<Arc<Ring>> {
        if idx >= self.vars.len() {
            return Err(Error::UnknownVariable("<index out of range>".into()));
        }
        let vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        Ring::new(self.field.clone(), vars)
    }

    /// The ring extended by a fresh variable appended last (used for the
    /// characteristic-polynomial indeterminate).
    pub fn with_extra_var(&self, name: &str) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.push(name.into());
        Ring::new(self.field.clone(), vars)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

/// A rational closed point: one field element per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    coords: Vec<Scalar>,
}

impl PointSpec {
    pub fn new(ring: &Ring, coords: Vec<Scalar>) -> Result<PointSpec> {
        if coords.len() != ring.nvars() {
            return Err(Error::PointDimensionMismatch {
                expected: ring.nvars(),
                got: coords.len(),
            });
        }
        Ok(PointSpec { coords })
    }

    pub fn origin(ring: &Ring) -> PointSpec {
        PointSpec {
            coords: (0..ring.nvars()).map(|_| ring.field().zero()).collect(),
        }
    }

    pub fn from_i64(ring: &Ring, coords: &[i64]) -> Result<PointSpec> {
        PointSpec::new(
            ring,
            coords.iter().map(|&c| ring.field().from_i64(c)).collect(),
        )
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, idx: usize) -> &Scalar {
        &self.coords[idx]
    }

    pub fn is_origin(&self, field: &FieldSpec) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }

    /// The image point of the projection dropping variable `idx`.
    pub fn without_coord(&self, idx: usize) -> PointSpec {
        PointSpec {
            coords: self
                .coords
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, c)| c.clone())
                .collect(),
        }
    }

    pub fn format(&self, ring: &Ring) -> String {
        use core::fmt::Write;
        let mut s = String::from("(");
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", ring.field().format(c));
        }
        s.push(')');
        s
    }
}
