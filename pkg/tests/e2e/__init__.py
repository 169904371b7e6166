"""End-to-end tests package."""