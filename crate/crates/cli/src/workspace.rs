//! Named bindings parsed from workspace files: signatures, posets,
//! presentations, algebras, monotone maps, and homomorphisms. Names are
//! unique per kind; every cross-reference is resolved at load time.

use oal_core::algebra::{Homomorphism, OrderedAlgebra};
use oal_core::poset::{MonotoneMap, Poset};
use oal_core::term::{Presentation, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Signature,
    Poset,
    Presentation,
    Algebra,
    Map,
    Hom,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Kind::Signature => "signature",
            Kind::Poset => "poset",
            Kind::Presentation => "presentation",
            Kind::Algebra => "algebra",
            Kind::Map => "map",
            Kind::Hom => "hom",
        };
        write!(f, "{s}")
    }
}

pub struct SigEntry {
    pub name: String,
    pub sig: Signature,
}

pub struct PosetEntry {
    pub name: String,
    pub poset: Poset,
}

pub struct PresEntry {
    pub name: String,
    pub sig_name: String,
    pub vars: Vec<String>,
    pub pres: Presentation,
}

pub struct AlgEntry {
    pub name: String,
    pub sig_name: String,
    pub carrier_name: String,
    pub alg: OrderedAlgebra,
}

pub struct MapEntry {
    pub name: String,
    pub dom_name: String,
    pub cod_name: String,
    pub map: MonotoneMap,
}

pub struct HomEntry {
    pub name: String,
    pub dom_name: String,
    pub cod_name: String,
    pub hom: Homomorphism,
}

/// All bindings of one load, in declaration order.
#[derive(Default)]
pub struct Workspace {
    pub signatures: Vec<SigEntry>,
    pub posets: Vec<PosetEntry>,
    pub presentations: Vec<PresEntry>,
    pub algebras: Vec<AlgEntry>,
    pub maps: Vec<MapEntry>,
    pub homs: Vec<HomEntry>,
}

impl Workspace {
    pub fn signature(&self, name: &str) -> Option<&SigEntry> {
        self.signatures.iter().find(|e| e.name == name)
    }

    pub fn poset(&self, name: &str) -> Option<&PosetEntry> {
        self.posets.iter().find(|e| e.name == name)
    }

    pub fn presentation(&self, name: &str) -> Option<&PresEntry> {
        self.presentations.iter().find(|e| e.name == name)
    }

    pub fn algebra(&self, name: &str) -> Option<&AlgEntry> {
        self.algebras.iter().find(|e| e.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapEntry> {
        self.maps.iter().find(|e| e.name == name)
    }

    pub fn hom(&self, name: &str) -> Option<&HomEntry> {
        self.homs.iter().find(|e| e.name == name)
    }

    pub fn binding_count(&self) -> usize {
        self.signatures.len()
            + self.posets.len()
            + self.presentations.len()
            + self.algebras.len()
            + self.maps.len()
            + self.homs.len()
    }
}
