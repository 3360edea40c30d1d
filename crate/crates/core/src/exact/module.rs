use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

/// Finitely generated abelian group `Z^free + Z/t_1 + ... + Z/t_k`, torsion in
/// divisibility order with every `t_i > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZModule {
    free: u64,
    torsion: Vec<BigInt>,
}

impl ZModule {
    pub fn new(free: u64, mut torsion: Vec<BigInt>) -> Self {
        torsion.retain(|t| !t.is_one());
        torsion.sort();
        ZModule { free, torsion }
    }

    pub fn free(rank: u64) -> Self {
        ZModule { free: rank, torsion: Vec::new() }
    }

    pub fn zero() -> Self {
        ZModule::default()
    }

    pub fn free_rank(&self) -> u64 {
        self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &ZModule) -> ZModule {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        ZModule::new(self.free + other.free, t)
    }

    /// Direct sum of `n` copies.
    pub fn copies(&self, n: u64) -> ZModule {
        let mut t = Vec::new();
        for _ in 0..n {
            t.extend(self.torsion.iter().cloned());
        }
        ZModule::new(self.free * n, t)
    }
}

fn torsion_value(t: &BigInt) -> serde_json::Value {
    match t.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(t.to_string()),
    }
}

impl Serialize for ZModule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ZModule", 2)?;
        st.serialize_field("free", &self.free)?;
        let t: Vec<serde_json::Value> = self.torsion.iter().map(torsion_value).collect();
        st.serialize_field("torsion", &t)?;
        st.end()
    }
}

/// Integer-graded collection of [`ZModule`]s; absent degrees are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedZModule {
    degrees: BTreeMap<i64, ZModule>,
}

impl GradedZModule {
    pub fn new() -> Self {
        GradedZModule::default()
    }

    pub fn from_modules(entries: impl IntoIterator<Item = (i64, ZModule)>) -> Self {
        let mut g = GradedZModule::new();
        for (k, m) in entries {
            g.add(k, &m);
        }
        g
    }

    pub fn set(&mut self, degree: i64, module: ZModule) {
        if module.is_zero() {
            self.degrees.remove(&degree);
        } else {
            self.degrees.insert(degree, module);
        }
    }

    /// Adds `module` into the given degree as a direct summand.
    pub fn add(&mut self, degree: i64, module: &ZModule) {
        let cur = self.get(degree);
        self.set(degree, cur.direct_sum(module));
    }

    pub fn get(&self, degree: i64) -> ZModule {
        self.degrees.get(&degree).cloned().unwrap_or_default()
    }

    pub fn free_rank(&self, degree: i64) -> u64 {
        self.degrees.get(&degree).map_or(0, |m| m.free)
    }

    pub fn total_free_rank(&self) -> u64 {
        self.degrees.values().map(|m| m.free).sum()
    }

    /// Free rank plus the number of cyclic torsion summands, over all degrees.
    pub fn total_rank(&self) -> u64 {
        self.degrees.values().map(|m| m.free + m.torsion.len() as u64).sum()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i64, &ZModule)> {
        self.degrees.iter().map(|(k, m)| (*k, m))
    }

    pub fn support(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn direct_sum(&self, other: &GradedZModule) -> GradedZModule {
        let mut g = self.clone();
        for (k, m) in other.degrees() {
            g.add(k, m);
        }
        g
    }

    pub fn copies(&self, n: u64) -> GradedZModule {
        GradedZModule::from_modules(self.degrees().map(|(k, m)| (k, m.copies(n))))
    }

    pub fn shift(&self, by: i64) -> GradedZModule {
        GradedZModule::from_modules(self.degrees().map(|(k, m)| (k + by, m.clone())))
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|(k, m)| if k % 2 == 0 { m.free as i64 } else { -(m.free as i64) }).sum()
    }
}

impl Serialize for GradedZModule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.degrees.len()))?;
        for (k, m) in &self.degrees {
            map.serialize_entry(&k.to_string(), m)?;
        }
        map.end()
    }
}
