//! JSON schemas for digit words, tiles and point clouds.
//!
//! Serialization is deterministic (struct field order, compact encoding)
//! and parsing followed by re-serialization is the identity, which the
//! tests assert.

use serde::{Deserialize, Serialize};

use bonacci_core::dynamics::EventuallyPeriodic;
use bonacci_core::tiling::TileApprox;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDto {
    pub preperiod: Vec<i8>,
    pub period: Vec<i8>,
}

impl From<&EventuallyPeriodic> for ExpansionDto {
    fn from(w: &EventuallyPeriodic) -> Self {
        ExpansionDto {
            preperiod: w.preperiod().to_vec(),
            period: w.period().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileDto {
    pub base: String,
    pub layer: u32,
    pub expansion: ExpansionDto,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileSetDto {
    pub d: u32,
    pub depth: u32,
    pub precision_bits: u32,
    pub tiles: Vec<TileDto>,
}

impl TileDto {
    pub fn from_tile(tile: &TileApprox) -> Self {
        TileDto {
            base: tile.base.to_string(),
            layer: tile.layer.rep(),
            expansion: ExpansionDto::from(&tile.expansion),
            points: tile.points.iter().map(|p| p.coords_f64()).collect(),
        }
    }
}

/// Serialize a set of tile approximations to the export schema.
pub fn export_json(d: u32, depth: u32, precision_bits: u32, tiles: &[TileApprox]) -> String {
    let dto = TileSetDto {
        d,
        depth,
        precision_bits,
        tiles: tiles.iter().map(TileDto::from_tile).collect(),
    };
    serde_json::to_string(&dto).expect("tile export serializes")
}
