fn main() { std::process::exit(maxstretch::cli::main()); }
