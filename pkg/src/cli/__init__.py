"""Command-line front end: argument parsing, dispatch and report rendering"""
