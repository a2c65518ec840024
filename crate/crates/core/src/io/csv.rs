//! Bid-matrix CSV.
//!
//! ```text
//! item,S1,S2,S3
//! P1,19,13,
//! P2,19.50,17,16
//! FIXED_COST,10,13,15
//! ```
//!
//! The header starts with `item` followed by the vendor ids. Each data row is
//! an item id and one cell per vendor; a blank cell means no bid. The last
//! row, with item id `FIXED_COST`, holds the vendor fixed costs. Amounts use
//! `.` as decimal separator, at most two decimals, no thousands separators.

use std::collections::HashSet;

use ::csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use crate::error::{Error, Result};
use crate::model::{validate_instance, Instance, Item, RawInstance, Vendor};
use crate::scalar::{format_amount, parse_amount, CostScalar};

pub const FIXED_COST_ROW: &str = "FIXED_COST";
const HEADER_FIRST: &str = "item";

fn malformed(line: u64, reason: impl Into<String>) -> Error {
    Error::MalformedCsv { line, reason: reason.into() }
}

fn line_of(record: &StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

pub fn parse_bid_csv<T: CostScalar>(text: &str) -> Result<Instance<T>> {
    let mut reader = ReaderBuilder::new().has_headers(false).flexible(true).trim(Trim::All).from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| malformed(0, e.to_string()))?,
        None => return Err(malformed(0, "empty input")),
    };
    if header.get(0).map(str::to_ascii_lowercase).as_deref() != Some(HEADER_FIRST) {
        return Err(malformed(line_of(&header), format!("header must start with {HEADER_FIRST:?}")));
    }
    let vendors: Vec<Vendor> = header.iter().skip(1).map(Vendor::new).collect();
    let n = vendors.len();
    if n == 0 {
        return Err(malformed(line_of(&header), "header names no vendors"));
    }
    let mut seen = HashSet::new();
    for v in &vendors {
        if v.id.is_empty() {
            return Err(malformed(line_of(&header), "empty vendor name in header"));
        }
        if !seen.insert(v.id.as_str()) {
            return Err(malformed(line_of(&header), format!("duplicate vendor name {:?}", v.id)));
        }
    }

    let mut items = Vec::new();
    let mut prices = Vec::new();
    let mut fixed_costs: Option<Vec<T>> = None;
    for record in records {
        let record = record.map_err(|e| malformed(0, e.to_string()))?;
        let line = line_of(&record);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != n + 1 {
            return Err(malformed(line, format!("expected {} cells, found {}", n + 1, record.len())));
        }
        if fixed_costs.is_some() {
            return Err(malformed(line, format!("rows after the {FIXED_COST_ROW} row")));
        }
        let id = &record[0];
        let cells = record.iter().skip(1);
        if id == FIXED_COST_ROW {
            fixed_costs = Some(cells.map(parse_amount).collect::<Result<_>>()?);
        } else {
            let row = cells.map(|c| if c.is_empty() { Ok(None) } else { parse_amount(c).map(Some) }).collect::<Result<_>>()?;
            items.push(Item::new(id));
            prices.push(row);
        }
    }
    let fixed_costs = fixed_costs.ok_or_else(|| malformed(0, format!("missing {FIXED_COST_ROW} row")))?;
    validate_instance(RawInstance { items, vendors, prices, fixed_costs })
}

/// Canonical CSV for an instance; [`parse_bid_csv`] reads it back unchanged
/// when item names equal item ids.
pub fn write_bid_csv<T: CostScalar>(instance: &Instance<T>) -> String {
    let mut writer = WriterBuilder::new().from_writer(Vec::new());
    let header = std::iter::once(HEADER_FIRST.to_string()).chain(instance.vendors().iter().map(|v| v.id.clone()));
    writer.write_record(header).expect("write to memory");
    for (i, item) in instance.items().iter().enumerate() {
        let cells = instance.row(i).iter().map(|p| p.map(format_amount).unwrap_or_default());
        writer.write_record(std::iter::once(item.id.clone()).chain(cells)).expect("write to memory");
    }
    let fixed = instance.fixed_costs().iter().map(|&c| format_amount(c));
    writer.write_record(std::iter::once(FIXED_COST_ROW.to_string()).chain(fixed)).expect("write to memory");
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("CSV output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::sample;
    use proptest::prelude::*;

    const SAMPLE: &str = "item,S1,S2,S3,S4,S5
P1,19,13,11,12,12
P2,19,17,16,13,10
P3,15,14,21,18,11
P4,16,23,24,23,14
P5,23,11,16,11,24
P6,18,16,20,18,11
P7,22,18,22,20,11
P8,23,24,16,14,22
P9,12,10,10,14,16
FIXED_COST,10,13,15,8,11
";

    #[test]
    fn parses_sample() {
        assert_eq!(parse_bid_csv::<i64>(SAMPLE).unwrap(), sample());
    }

    #[test]
    fn blank_cell_means_no_bid() {
        let text = "item,S1,S2,S3,S4,S5\nP3,15,,21,18,11\nFIXED_COST,1,1,1,1,1\n";
        let inst = parse_bid_csv::<i64>(text).unwrap();
        assert_eq!(inst.price(0, 1), None);
        assert_eq!(inst.price(0, 0), Some(1500));
        assert_eq!(inst.bid_counts(), &[4]);
    }

    #[test]
    fn missing_fixed_cost_row() {
        let text = SAMPLE.lines().take(10).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_bid_csv::<i64>(&text), Err(Error::MalformedCsv { .. })));
    }

    #[test]
    fn malformed_inputs() {
        let cases = [
            "",
            "product,S1\nP1,1\nFIXED_COST,1\n",
            "item,S1,S1\nP1,1,2\nFIXED_COST,1,1\n",
            "item,S1,S2\nP1,1\nFIXED_COST,1,1\n",
            "item,S1,S2\nFIXED_COST,1,1\nP1,1,2\n",
            "item\nP1\nFIXED_COST\n",
        ];
        for text in cases {
            assert!(matches!(parse_bid_csv::<i64>(text), Err(Error::MalformedCsv { .. })), "{text:?}");
        }
    }

    #[test]
    fn bad_numbers() {
        for cell in ["-1", "1.234", "abc", "220.736,00", "1e2"] {
            let text = format!("item,S1\nP1,\"{cell}\"\nFIXED_COST,1\n");
            assert!(matches!(parse_bid_csv::<i64>(&text), Err(Error::BadNumber { .. })), "{cell}");
        }
        let text = "item,S1\nP1,5\nFIXED_COST,\n";
        assert!(matches!(parse_bid_csv::<i64>(text), Err(Error::BadNumber { .. })));
    }

    #[test]
    fn validation_errors_pass_through() {
        let text = "item,S1\nP1,0\nFIXED_COST,1\n";
        assert!(matches!(parse_bid_csv::<i64>(text), Err(Error::NonPositivePrice { .. })));
        let text = "item,S1\nP1,1\nP1,2\nFIXED_COST,1\n";
        assert!(matches!(parse_bid_csv::<i64>(text), Err(Error::DuplicateId { .. })));
    }

    #[test]
    fn writer_output_is_canonical() {
        let text = write_bid_csv(&sample());
        assert!(text.starts_with("item,S1,S2,S3,S4,S5\nP1,19.00,13.00,11.00,12.00,12.00\n"));
        assert!(text.ends_with("FIXED_COST,10.00,13.00,15.00,8.00,11.00\n"));
    }

    fn raw_strategy() -> impl Strategy<Value = (Vec<Vec<Option<i64>>>, Vec<i64>)> {
        (1_usize..6, 1_usize..8).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::vec(proptest::option::of(1_i64..10_000_000), n), m),
                proptest::collection::vec(0_i64..1_000_000, n),
            )
        })
    }

    proptest! {
        #[test]
        fn csv_round_trip((prices, fixed) in raw_strategy()) {
            let raw = RawInstance {
                items: (0..prices.len()).map(|i| Item::new(format!("item {i}, \"quoted\""))).collect(),
                vendors: (0..fixed.len()).map(|j| Vendor::new(format!("V{j}"))).collect(),
                prices,
                fixed_costs: fixed,
            };
            let inst = validate_instance(raw).unwrap();
            prop_assert_eq!(parse_bid_csv::<i64>(&write_bid_csv(&inst)).unwrap(), inst);
        }
    }
}
