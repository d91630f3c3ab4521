"""Criteria, bounds, constructions, search and property suites"""
