//! Tabular reports and their JSON / CSV encodings.

use std::collections::BTreeMap;

use serde_json::{Map, Number, Value};

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => match Number::from_f64(round_significant(*x)) {
                Some(n) => Value::Number(n),
                None => Value::String(non_finite(*x).to_string()),
            },
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) if x.is_finite() => {
                serde_json::to_string(&round_significant(*x)).expect("finite float")
            }
            Cell::Num(x) => non_finite(*x).to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(i64::from(x))
    }
}

impl From<i32> for Cell {
    fn from(x: i32) -> Self {
        Cell::Int(i64::from(x))
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

/// Rounds to 15 significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Cell>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Cell>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json_value(&self) -> Value {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let results: Map<String, Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows = t
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            t.columns
                                .iter()
                                .cloned()
                                .zip(row.iter().map(Cell::to_json))
                                .collect(),
                        )
                    })
                    .collect();
                (t.name.clone(), Value::Array(rows))
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("inputs".into(), Value::Object(inputs));
        top.insert("results".into(), Value::Object(results));
        top.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    /// Sections `# name` followed by a header and rows. Inputs and warnings
    /// come first as their own sections.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# command,{}\n", self.command);
        let mut inputs = Table::new("inputs", &["key", "value"]);
        for (k, v) in &self.inputs {
            inputs.push(vec![Cell::text(k), v.clone()]);
        }
        let mut warnings = Table::new("warnings", &["message"]);
        for w in &self.warnings {
            warnings.push(vec![Cell::text(w)]);
        }
        let mut tables: Vec<&Table> = vec![&inputs];
        tables.extend(self.sorted_tables());
        if !self.warnings.is_empty() {
            tables.push(&warnings);
        }
        for t in tables {
            out.push_str(&format!("# {}\n", t.name));
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory write");
            for row in &t.rows {
                w.write_record(row.iter().map(Cell::to_csv)).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        }
        out
    }

    /// Tables in name order, matching the JSON object order.
    fn sorted_tables(&self) -> Vec<&Table> {
        let mut v: Vec<&Table> = self.tables.iter().collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }
}
