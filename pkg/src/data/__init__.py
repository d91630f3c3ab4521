"""Matrix file input and output"""
