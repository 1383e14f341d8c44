// bindings filled in later
