//! Versioned city coordinate table.
//!
//! ```text
//! # comment
//! version 1
//! quito -0.1807 -78.4678
//! ```

use std::collections::BTreeMap;

use crate::error::{domain, Result};

use super::{latlon_point, SurfacePoint};

/// The table shipped with the crate.
pub const BUNDLED: &str = include_str!("../../data/cities.txt");

pub const TABLE_VERSION: u32 = 1;

/// Mean Earth radius in kilometres used by the bundled examples.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct City {
    pub latitude: f64,
    pub longitude: f64,
}

impl City {
    pub fn point(&self, radius: f64) -> Result<SurfacePoint> {
        latlon_point(self.latitude, self.longitude, radius)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CityTable {
    cities: BTreeMap<String, City>,
}

impl CityTable {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled city table is well formed")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut cities = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if version.is_none() {
                match fields.as_slice() {
                    ["version", v] if v.parse::<u32>() == Ok(TABLE_VERSION) => {
                        version = Some(TABLE_VERSION);
                        continue;
                    }
                    _ => return domain(format!("line {}: expected `version {TABLE_VERSION}`", lineno + 1)),
                }
            }
            let [name, lat, lon] = fields.as_slice() else {
                return domain(format!("line {}: expected `name latitude longitude`", lineno + 1));
            };
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| crate::Error::Domain(format!("line {}: bad number {s:?}", lineno + 1)))
            };
            let city = City { latitude: parse(lat)?, longitude: parse(lon)? };
            latlon_point(city.latitude, city.longitude, 1.0)
                .map_err(|e| crate::Error::Domain(format!("line {}: {e}", lineno + 1)))?;
            if cities.insert(name.to_string(), city).is_some() {
                return domain(format!("line {}: duplicate city {name}", lineno + 1));
            }
        }
        if version.is_none() {
            return domain("city table has no version line");
        }
        Ok(CityTable { cities })
    }

    pub fn get(&self, name: &str) -> Result<City> {
        match self.cities.get(&name.to_ascii_lowercase()) {
            Some(c) => Ok(*c),
            None => domain(format!(
                "unknown city {name:?}; known: {}",
                self.cities.keys().cloned().collect::<Vec<_>>().join(", ")
            )),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.cities.keys().map(String::as_str)
    }
}
