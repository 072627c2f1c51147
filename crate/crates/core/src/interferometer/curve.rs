use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::schmidt::columns::Num;

/// Width against gap size, as plotted against L or k″d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthCurve {
    pub abscissa: Vec<f64>,
    pub width: Vec<f64>,
    pub unit_abscissa: String,
    pub unit_width: String,
    pub metadata: serde_json::Value,
}

impl WidthCurve {
    pub fn new(
        abscissa: Vec<f64>,
        width: Vec<f64>,
        unit_abscissa: &str,
        unit_width: &str,
        metadata: serde_json::Value,
    ) -> Self {
        assert_eq!(abscissa.len(), width.len(), "curve columns differ in length");
        WidthCurve {
            abscissa,
            width,
            unit_abscissa: unit_abscissa.to_string(),
            unit_width: unit_width.to_string(),
            metadata,
        }
    }

    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }

    /// `abscissa,width,unit_abscissa,unit_width` with one row per point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("abscissa,width,unit_abscissa,unit_width\n");
        for (x, y) in self.abscissa.iter().zip(&self.width) {
            writeln!(out, "{},{},{},{}", Num(*x), Num(*y), self.unit_abscissa, self.unit_width).unwrap();
        }
        out
    }

    /// Metadata sidecar: units plus the configuration snapshot.
    pub fn metadata_json(&self) -> String {
        let doc = serde_json::json!({
            "columns": ["abscissa", "width", "unit_abscissa", "unit_width"],
            "unit_abscissa": self.unit_abscissa,
            "unit_width": self.unit_width,
            "rows": self.len(),
            "metadata": self.metadata,
        });
        serde_json::to_string_pretty(&doc).expect("metadata serialises")
    }

    pub fn is_non_increasing(&self) -> bool {
        self.width.windows(2).all(|w| w[1] <= w[0])
    }
}
