//! JSON instance and witness files.
//!
//! Every number is an exact rational written as a string (`"3/4"`, `"2"`);
//! bare JSON integers are accepted on input. Declaration order fixes agent
//! and bin ids.

use std::fmt;
use std::path::Path;

use packmech_core::rational::{format_rational, parse_rational};
use packmech_core::verify::{Property, Target, Witness};
use packmech_core::{Assignment, Bid, BinSpec, Instance, Rational, Slot};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational that (de)serializes as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string like \"3/4\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                parse_rational(v).map(Exact).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, _: f64) -> Result<Exact, E> {
                Err(E::custom("floating-point literals are ambiguous; write \"p/q\""))
            }
        }

        d.deserialize_any(ExactVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinEntry {
    pub capacity: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemEntry {
    pub value: Exact,
    /// Scalar size; defaults to the largest entry of `sizes`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<Exact>,
    /// Per-bin sizes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<Exact>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrival: Option<Slot>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub departure: Option<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub bins: Vec<BinEntry>,
    #[serde(default)]
    pub items: Vec<ItemEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bin_budget: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub online: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}, field `{field}`: {message}")]
    Syntax {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("items[{index}]: needs `size` or `sizes`")]
    MissingSize { index: usize },
    #[error("invalid instance: {0}")]
    Invalid(#[from] packmech_core::ModelError),
}

impl ItemEntry {
    fn from_bid(bid: &Bid) -> Self {
        ItemEntry {
            value: Exact(bid.value.clone()),
            size: Some(Exact(bid.size.clone())),
            sizes: bid
                .size_vector
                .as_ref()
                .map(|v| v.iter().cloned().map(Exact).collect()),
            arrival: bid.arrival,
            departure: bid.departure,
        }
    }

    fn to_bid(&self, index: usize) -> Result<Bid, FormatError> {
        let sizes: Option<Vec<Rational>> =
            self.sizes.as_ref().map(|v| v.iter().map(|e| e.0.clone()).collect());
        let size = match (&self.size, &sizes) {
            (Some(s), _) => s.0.clone(),
            (None, Some(v)) if !v.is_empty() => v.iter().max().cloned().unwrap_or_default(),
            _ => return Err(FormatError::MissingSize { index }),
        };
        let mut bid = Bid::new(index, self.value.0.clone(), size);
        bid.size_vector = sizes;
        bid.arrival = self.arrival;
        bid.departure = self.departure;
        Ok(bid)
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            bins: inst
                .bins
                .iter()
                .map(|b| BinEntry {
                    capacity: Exact(b.capacity.clone()),
                    slot: b.slot,
                })
                .collect(),
            items: inst.bids.iter().map(ItemEntry::from_bid).collect(),
            bin_budget: inst.bin_budget,
            online: inst.online,
        }
    }

    /// Builds and validates the instance.
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        let bins = self
            .bins
            .iter()
            .enumerate()
            .map(|(j, b)| BinSpec {
                id: j,
                capacity: b.capacity.0.clone(),
                slot: b.slot,
            })
            .collect();
        let bids = self
            .items
            .iter()
            .enumerate()
            .map(|(i, item)| item.to_bid(i))
            .collect::<Result<_, _>>()?;
        let inst = Instance {
            bids,
            bins,
            bin_budget: self.bin_budget,
            online: self.online,
        };
        Ok(inst.validate()?)
    }
}

fn syntax_error(err: serde_path_to_error::Error<serde_json::Error>) -> FormatError {
    let field = err.path().to_string();
    let inner = err.into_inner();
    FormatError::Syntax {
        line: inner.line(),
        column: inner.column(),
        field,
        message: inner.to_string(),
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(syntax_error)?;
    file.to_instance()
}

/// Canonical pretty-printed document, newline-terminated.
pub fn serialize_instance(inst: &Instance) -> String {
    to_pretty(&InstanceFile::from_instance(inst))
}

pub fn read_instance(path: &Path) -> Result<Instance, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("in-memory serialization");
    text.push('\n');
    text
}

/// Per-bin agent lists.
pub fn bins_of(a: &Assignment) -> Vec<Vec<usize>> {
    a.per_bin.iter().map(|s| s.iter().copied().collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub agent: usize,
    pub trial: usize,
    pub from: ItemEntry,
    pub to: ItemEntry,
}

/// A failing check, with the base instance and the bid change that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub property: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus_index: Option<usize>,
    pub instance: InstanceFile,
    pub perturbation: Perturbation,
    pub before: Vec<Vec<usize>>,
    pub after: Vec<Vec<usize>>,
}

impl WitnessFile {
    pub fn new(
        property: Property,
        target: &Target,
        corpus_index: Option<usize>,
        inst: &Instance,
        w: &Witness,
    ) -> Self {
        WitnessFile {
            property: property.name().to_string(),
            target: target.to_string(),
            corpus_index,
            instance: InstanceFile::from_instance(inst),
            perturbation: Perturbation {
                agent: w.agent,
                trial: w.trial,
                from: ItemEntry::from_bid(&w.old_bid),
                to: ItemEntry::from_bid(&w.new_bid),
            },
            before: bins_of(&w.old_output),
            after: bins_of(&w.new_output),
        }
    }

    pub fn to_text(&self) -> String {
        to_pretty(self)
    }
}
