namespace seamless {}
