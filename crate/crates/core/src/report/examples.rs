//! Built-in configurations.

/// Parameters of the parametrized examples `zp` and `zp-twist`.
#[derive(Clone, Copy, Debug)]
pub struct ExampleParams {
    pub prime: u64,
    pub unit: i64,
    pub depth: usize,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams { prime: 3, unit: 2, depth: 2 }
    }
}

pub const EXAMPLE_NAMES: [&str; 6] = ["plain-z4", "omega-sign", "galois-twist", "zp", "zp-twist", "s3-invalid-omega"];

/// TOML text of a built-in example. The tower examples default to the conductor `p^depth`,
/// over which every level splits.
pub fn example_config(name: &str, params: ExampleParams) -> Option<String> {
    let ExampleParams { prime: p, unit: u, depth } = params;
    let conductor = p.checked_pow(depth as u32)?;
    let text = match name {
        "plain-z4" => r#"schema = 1
name = "plain-z4"
field = { conductor = 1 }
group = { kind = "cyclic", n = 4 }
levels = [[0, 1, 2, 3], [0, 2], [0]]
"#
        .to_string(),
        "omega-sign" => r#"schema = 1
name = "omega-sign"
field = { conductor = 1 }
group = { kind = "cyclic", n = 4 }
normal = { members = [0, 2], values = ["1", "-1"] }
levels = [[0]]
"#
        .to_string(),
        "galois-twist" => r#"schema = 1
name = "galois-twist"
field = { conductor = 4 }
group = { kind = "cyclic", n = 4 }
rho = [1, 3, 1, 3]
levels = [[0, 2], [0]]
"#
        .to_string(),
        "zp" => format!(
            "schema = 1\nname = \"zp\"\nfield = {{ conductor = {conductor} }}\ntower = {{ kind = \"cyclic\", p = {p}, depth = {depth} }}\n"
        ),
        "zp-twist" => format!(
            "schema = 1\nname = \"zp-twist\"\nfield = {{ conductor = {conductor} }}\n\
             tower = {{ kind = \"cyclic\", p = {p}, depth = {depth}, twist = {u} }}\n"
        ),
        "s3-invalid-omega" => r#"schema = 1
name = "s3-invalid-omega"
field = { conductor = 3 }
group = { kind = "symmetric", n = 3 }
normal = { members = [0, 3, 4], values = ["1", "zeta^1", "zeta^2"] }
levels = [[0]]
"#
        .to_string(),
        _ => return None,
    };
    Some(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::config::{build_problem, parse_config, Overrides};

    #[test]
    fn all_examples_parse() {
        for name in EXAMPLE_NAMES {
            let cfg = parse_config(&example_config(name, ExampleParams::default()).unwrap()).unwrap();
            let p = build_problem(&cfg, &Overrides::default()).unwrap();
            assert_eq!(p.validation().is_valid(), name != "s3-invalid-omega", "{name}");
        }
        assert!(example_config("nope", ExampleParams::default()).is_none());
    }
}
