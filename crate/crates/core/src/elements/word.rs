//! Words in tree pairs and portraits.

use std::fmt;

use super::{Portrait, TreePair};
use crate::error::{Error, Result};
use crate::tree::Shape;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Pair(TreePair),
    Portrait(Portrait),
}

impl Generator {
    pub fn shape(&self) -> &Shape {
        match self {
            Generator::Pair(t) => t.shape(),
            Generator::Portrait(p) => p.shape(),
        }
    }

    pub fn to_tree_pair(&self) -> TreePair {
        match self {
            Generator::Pair(t) => t.reduce(),
            Generator::Portrait(p) => p.to_tree_pair(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Pair(t) => write!(f, "{t}"),
            Generator::Portrait(p) => write!(f, "{p}"),
        }
    }
}

/// A generator with exponent `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub generator: Generator,
    pub inverse: bool,
}

impl Factor {
    pub fn new(generator: Generator, inverse: bool) -> Factor {
        Factor { generator, inverse }
    }

    pub fn to_tree_pair(&self) -> TreePair {
        let t = self.generator.to_tree_pair();
        if self.inverse {
            t.inverse()
        } else {
            t
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "inv({})", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A product `f_1 * f_2 * … * f_n`; the rightmost factor acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWord {
    shape: Shape,
    factors: Vec<Factor>,
}

impl GroupWord {
    pub fn new(shape: Shape, factors: Vec<Factor>) -> Result<GroupWord> {
        if factors.is_empty() {
            return Err(Error::MalformedWord("empty word".into()));
        }
        if factors.iter().any(|f| *f.generator.shape() != shape) {
            return Err(Error::ShapeMismatch);
        }
        Ok(GroupWord { shape, factors })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The reduced tree pair of the product.
    pub fn normal_form(&self) -> TreePair {
        let mut acc = TreePair::identity(self.shape);
        for f in &self.factors {
            acc = acc.compose(&f.to_tree_pair()).expect("shapes checked");
        }
        acc
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
